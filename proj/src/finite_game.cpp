#include "signaleq/finite_game.hpp"

#include "signaleq/kvfile.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace sigeq {

void FiniteGame::validate() const {
    if (Z.empty() || S.empty() || T.empty())
        throw domain_error(name + ": empty chain");
    auto inc = [&](const std::vector<Rat>& v, const char* what) {
        for (size_t i = 0; i + 1 < v.size(); ++i)
            if (!(v[i] < v[i + 1]))
                throw domain_error(name + ": " + what +
                                   " not strictly increasing");
    };
    inc(Z, "types");
    inc(S, "actions");
    inc(T, "reactions");
    if (prior.size() != Z.size())
        throw domain_error(name + ": prior size mismatch");
    Rat total(0);
    for (const Rat& p : prior) {
        if (!(p > Rat(0))) throw domain_error(name + ": prior entries must be > 0");
        total = total + p;
    }
    if (total != Rat(1)) throw domain_error(name + ": prior does not sum to 1");
    const size_t want = Z.size() * S.size() * T.size();
    if (u_table.size() != want || g_table.size() != want)
        throw domain_error(name + ": payoff table size mismatch");
}

FiniteGame FiniteGame::from_callables(
    std::vector<Rat> Z, std::vector<Rat> S, std::vector<Rat> T,
    std::vector<Rat> prior,
    const std::function<double(double, double, double)>& u,
    const std::function<double(double, double, double)>& g) {
    FiniteGame game;
    game.Z = std::move(Z);
    game.S = std::move(S);
    game.T = std::move(T);
    game.prior = std::move(prior);
    game.u_table.reserve(game.Z.size() * game.S.size() * game.T.size());
    game.g_table.reserve(game.u_table.capacity());
    for (const Rat& t : game.T)
        for (const Rat& s : game.S)
            for (const Rat& z : game.Z) {
                game.u_table.push_back(Rat::from_double(
                    u(t.to_double(), s.to_double(), z.to_double())));
                game.g_table.push_back(Rat::from_double(
                    g(t.to_double(), s.to_double(), z.to_double())));
            }
    game.validate();
    return game;
}

Certificate FiniteGame::certify_monotone_supermodular() const {
    Certificate cert{"sender_monotone_supermodular(exact)", Verdict::Pass, "",
                     ""};
    const Rat zero(0);
    bool weak_at_null = false;
    auto fail = [&](std::string w) {
        cert.verdict = Verdict::Fail;
        cert.witness = std::move(w);
    };
    for (int ti = 0; ti < nt() && cert.ok(); ++ti)
        for (int zi = 0; zi < nz() && cert.ok(); ++zi)
            for (int si = 0; si + 1 < ns() && cert.ok(); ++si)
                if (!(u(ti, si, zi) > u(ti, si + 1, zi)))
                    fail("u not decreasing in s at t=" + T[ti].str() + ",s=" +
                         S[si].str() + ",z=" + Z[zi].str());
    for (int si = 0; si < ns() && cert.ok(); ++si)
        for (int zi = 0; zi < nz() && cert.ok(); ++zi)
            for (int ti = 0; ti + 1 < nt() && cert.ok(); ++ti)
                if (!(u(ti + 1, si, zi) > u(ti, si, zi)))
                    fail("u not increasing in t at t=" + T[ti].str() + ",s=" +
                         S[si].str() + ",z=" + Z[zi].str());
    for (int ti = 0; ti < nt() && cert.ok(); ++ti)
        for (int si = 0; si < ns() && cert.ok(); ++si)
            for (int zi = 0; zi + 1 < nz() && cert.ok(); ++zi) {
                const Rat d = u(ti, si, zi + 1) - u(ti, si, zi);
                if (S[si] == zero) {
                    if (d < zero)
                        fail("u decreasing in z at the null action");
                    else if (d == zero)
                        weak_at_null = true;
                } else if (!(d > zero)) {
                    fail("u not increasing in z at t=" + T[ti].str() + ",s=" +
                         S[si].str() + ",z=" + Z[zi].str());
                }
            }
    // strict single crossing in ((t,s); z), all comparable pairs
    for (int ti = 0; ti < nt() && cert.ok(); ++ti)
        for (int si = 0; si < ns() && cert.ok(); ++si)
            for (int tj = ti; tj < nt() && cert.ok(); ++tj)
                for (int sj = si; sj < ns() && cert.ok(); ++sj) {
                    if (ti == tj && si == sj) continue;
                    for (int zi = 0; zi + 1 < nz() && cert.ok(); ++zi)
                        for (int zj = zi + 1; zj < nz() && cert.ok(); ++zj) {
                            if (u(tj, sj, zi) - u(ti, si, zi) < zero) continue;
                            if (!(u(tj, sj, zj) - u(ti, si, zj) > zero))
                                fail("single crossing fails: (t,s)=(" +
                                     T[ti].str() + "," + S[si].str() +
                                     ")->(" + T[tj].str() + "," + S[sj].str() +
                                     "), z=" + Z[zi].str() + "->" +
                                     Z[zj].str());
                        }
                }
    if (cert.ok() && weak_at_null)
        cert.note = "monotone in z only weakly at action 0";
    return cert;
}

std::vector<int> PurePBE::support(int si) const {
    std::vector<int> out;
    for (size_t zi = 0; zi < mu[si].size(); ++zi)
        if (mu[si][zi] > Rat(0)) out.push_back(static_cast<int>(zi));
    return out;
}

std::string PurePBE::describe(const FiniteGame& g) const {
    std::ostringstream os;
    os << "sigma=[";
    for (size_t zi = 0; zi < sigma.size(); ++zi)
        os << (zi ? " " : "") << g.Z[zi].str() << "->"
           << g.S[sigma[zi]].str();
    os << "] tau=[";
    for (size_t si = 0; si < tau.size(); ++si)
        os << (si ? " " : "") << g.S[si].str() << "->" << g.T[tau[si]].str();
    os << "] supports=[";
    for (size_t si = 0; si < mu.size(); ++si) {
        os << (si ? " " : "") << "{";
        bool first = true;
        for (int zi : support(static_cast<int>(si))) {
            os << (first ? "" : ",") << g.Z[zi].str();
            first = false;
        }
        os << "}";
    }
    os << "]";
    return os.str();
}

namespace {

// Receiver argmax set over reactions, exact.
std::vector<int> receiver_argmax(const FiniteGame& g, int si,
                                 const std::vector<Rat>& belief) {
    std::vector<int> best;
    Rat best_val;
    for (int ti = 0; ti < g.nt(); ++ti) {
        Rat val(0);
        for (int zi = 0; zi < g.nz(); ++zi)
            if (belief[zi] > Rat(0))
                val = val + belief[zi] * g.g(ti, si, zi);
        if (best.empty() || val > best_val) {
            best = {ti};
            best_val = val;
        } else if (val == best_val) {
            best.push_back(ti);
        }
    }
    return best;
}

std::vector<std::vector<Rat>> default_belief_grid(const FiniteGame& g,
                                                  const EnumOptions& opt) {
    std::vector<std::vector<Rat>> grid;
    for (int zi = 0; zi < g.nz(); ++zi) {
        std::vector<Rat> pm(g.nz(), Rat(0));
        pm[zi] = Rat(1);
        grid.push_back(std::move(pm));
    }
    if (g.nz() > 1)
        grid.push_back(std::vector<Rat>(g.nz(), Rat(1, g.nz())));
    for (const auto& b : opt.extra_beliefs) {
        if (static_cast<int>(b.size()) != g.nz())
            throw domain_error("extra belief has wrong dimension");
        grid.push_back(b);
    }
    return grid;
}

std::string pbe_key(const PurePBE& p) {
    std::ostringstream os;
    for (int v : p.sigma) os << v << ",";
    os << ";";
    for (int v : p.tau) os << v << ",";
    os << ";";
    for (const auto& dist : p.mu) {
        for (const Rat& q : dist) os << q.str() << ",";
        os << "|";
    }
    return os.str();
}

} // namespace

std::vector<PurePBE> enumerate_pure_pbe(const FiniteGame& game,
                                        const EnumOptions& opt) {
    game.validate();
    const int nz = game.nz(), ns = game.ns();
    const auto grid = default_belief_grid(game, opt);

    // exact candidate count: sum over sigma maps of grid^(#off-path actions);
    // grouped by the size k of range(sigma) this is
    // sum_k C(ns,k) * surj(nz,k) * grid^(ns-k)
    {
        auto choose = [](int n, int k) {
            double r = 1;
            for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
            return r;
        };
        auto surj = [&](int n, int k) {
            double r = 0;
            for (int j = 0; j <= k; ++j)
                r += (j % 2 ? -1.0 : 1.0) * choose(k, j) * std::pow(k - j, n);
            return r;
        };
        double est = 0;
        for (int k = 1; k <= std::min(nz, ns); ++k)
            est += choose(ns, k) * surj(nz, k) *
                   std::pow(static_cast<double>(grid.size()), ns - k);
        const std::uint64_t needed =
            est > 1e18 ? ~0ULL : static_cast<std::uint64_t>(est);
        if (needed > opt.budget)
            throw resource_error(
                "enumerate_pure_pbe: combinatorial budget exceeded (needs " +
                    std::to_string(needed) + " candidates, budget " +
                    std::to_string(opt.budget) + ")",
                needed);
    }

    // off-path best replies depend only on (action, grid belief): precompute
    std::vector<std::vector<std::vector<int>>> br_off(
        ns, std::vector<std::vector<int>>(grid.size()));
    for (int si = 0; si < ns; ++si)
        for (size_t bi = 0; bi < grid.size(); ++bi)
            br_off[si][bi] = receiver_argmax(game, si, grid[bi]);

    std::vector<PurePBE> found;
    std::set<std::string> seen;

    std::vector<int> sigma(nz, 0);
    while (true) {
        // on-path posteriors by Bayes (all priors positive)
        std::vector<char> on_path(ns, 0);
        for (int zi = 0; zi < nz; ++zi) on_path[sigma[zi]] = 1;
        std::vector<std::vector<Rat>> posterior(ns);
        std::vector<std::vector<int>> br_on(ns);
        for (int si = 0; si < ns; ++si) {
            if (!on_path[si]) continue;
            Rat mass(0);
            for (int zi = 0; zi < nz; ++zi)
                if (sigma[zi] == si) mass = mass + game.prior[zi];
            std::vector<Rat> post(nz, Rat(0));
            for (int zi = 0; zi < nz; ++zi)
                if (sigma[zi] == si) post[zi] = game.prior[zi] / mass;
            posterior[si] = std::move(post);
            br_on[si] = receiver_argmax(game, si, posterior[si]);
        }
        std::vector<int> off_actions;
        for (int si = 0; si < ns; ++si)
            if (!on_path[si]) off_actions.push_back(si);

        // odometer over grid beliefs for off-path actions
        std::vector<size_t> pick(off_actions.size(), 0);
        while (true) {
            std::vector<std::vector<Rat>> mu(ns);
            std::vector<std::vector<int>> argmax(ns);
            for (int si = 0; si < ns; ++si) {
                if (on_path[si]) {
                    mu[si] = posterior[si];
                    argmax[si] = br_on[si];
                }
            }
            for (size_t k = 0; k < off_actions.size(); ++k) {
                mu[off_actions[k]] = grid[pick[k]];
                argmax[off_actions[k]] = br_off[off_actions[k]][pick[k]];
            }

            // tie selections: lowest reaction, or the full product when
            // enabled and small enough
            std::uint64_t tie_product = 1;
            for (int si = 0; si < ns; ++si)
                tie_product *= argmax[si].size();
            const bool enumerate_ties =
                opt.enumerate_tie_selections &&
                tie_product <= static_cast<std::uint64_t>(opt.max_tie_combos);

            std::vector<size_t> tsel(ns, 0);
            while (true) {
                std::vector<int> tau(ns);
                for (int si = 0; si < ns; ++si)
                    tau[si] = argmax[si][enumerate_ties ? tsel[si] : 0];

                // sender optimality, exact
                bool ok = true;
                std::vector<Rat> utility(nz);
                for (int zi = 0; zi < nz && ok; ++zi) {
                    const Rat own = game.u(tau[sigma[zi]], sigma[zi], zi);
                    for (int si = 0; si < ns; ++si)
                        if (game.u(tau[si], si, zi) > own) {
                            ok = false;
                            break;
                        }
                    utility[zi] = own;
                }
                if (ok) {
                    PurePBE pbe;
                    pbe.sigma = sigma;
                    pbe.tau = tau;
                    pbe.mu = mu;
                    pbe.utility = utility;
                    pbe.on_path = on_path;
                    pbe.sender_rational = true;
                    pbe.receiver_rational = true;
                    pbe.bayes_consistent = true;
                    const std::string key = pbe_key(pbe);
                    if (seen.insert(key).second) found.push_back(std::move(pbe));
                }

                if (!enumerate_ties) break;
                int d = 0;
                for (; d < ns; ++d) {
                    if (++tsel[d] < argmax[d].size()) break;
                    tsel[d] = 0;
                }
                if (d == ns) break;
            }

            size_t k = 0;
            for (; k < pick.size(); ++k) {
                if (++pick[k] < grid.size()) break;
                pick[k] = 0;
            }
            if (k == pick.size()) break;
        }

        int zi = 0;
        for (; zi < nz; ++zi) {
            if (++sigma[zi] < ns) break;
            sigma[zi] = 0;
        }
        if (zi == nz) break;
    }
    return found;
}

D1Result passes_criterion_d1(const FiniteGame& game, const PurePBE& pbe) {
    D1Result res;
    const int nz = game.nz(), ns = game.ns(), nt = game.nt();
    for (int si = 0; si < ns; ++si) {
        if (pbe.on_path[si]) continue;
        // weak and strict gain sets over reactions, per type
        std::vector<std::vector<char>> weak(nz, std::vector<char>(nt, 0));
        std::vector<std::vector<char>> strict(nz, std::vector<char>(nt, 0));
        for (int zi = 0; zi < nz; ++zi)
            for (int ti = 0; ti < nt; ++ti) {
                const Rat val = game.u(ti, si, zi);
                if (val >= pbe.utility[zi]) weak[zi][ti] = 1;
                if (val > pbe.utility[zi]) strict[zi][ti] = 1;
            }
        auto contained = [&](const std::vector<char>& a,
                             const std::vector<char>& b) {
            for (int ti = 0; ti < nt; ++ti)
                if (a[ti] && !b[ti]) return false;
            return true;
        };
        // z is pruned when another type's strict-gain set covers its whole
        // weak-gain set; with an empty weak-gain set the containment is
        // vacuous, so an action nobody can ever profit from prunes every
        // type and no belief survives there
        std::vector<int> zprime;
        for (int zi = 0; zi < nz; ++zi) {
            bool dominated = false;
            for (int zj = 0; zj < nz && !dominated; ++zj) {
                if (zj == zi) continue;
                if (contained(weak[zi], strict[zj])) dominated = true;
            }
            if (!dominated) zprime.push_back(zi);
        }
        res.undominated[si] = zprime;
        if (zprime.empty()) {
            res.passes = false;
            res.witness_s = si;
            res.witness_z = pbe.support(si).front();
            return res;
        }
        for (int zi : pbe.support(si)) {
            if (std::find(zprime.begin(), zprime.end(), zi) == zprime.end()) {
                res.passes = false;
                res.witness_s = si;
                res.witness_z = zi;
                return res;
            }
        }
    }
    return res;
}

MonotoneResult is_stronger_monotone(const FiniteGame& game,
                                    const PurePBE& pbe) {
    MonotoneResult res;
    for (size_t zi = 0; zi + 1 < pbe.sigma.size(); ++zi)
        if (pbe.sigma[zi] > pbe.sigma[zi + 1]) {
            res.passes = false;
            res.witness = "sigma decreasing between z=" + game.Z[zi].str() +
                          " and z=" + game.Z[zi + 1].str();
            return res;
        }
    for (size_t si = 0; si + 1 < pbe.tau.size(); ++si)
        if (pbe.tau[si] > pbe.tau[si + 1]) {
            res.passes = false;
            res.witness = "tau decreasing between s=" + game.S[si].str() +
                          " and s=" + game.S[si + 1].str();
            return res;
        }
    for (int si = 0; si < game.ns(); ++si)
        for (int sj = si + 1; sj < game.ns(); ++sj) {
            const auto a = pbe.support(si);
            const auto b = pbe.support(sj);
            // supp mu(s) <=_c supp mu(s'): max of the lower support must not
            // exceed min of the higher
            if (game.Z[a.back()] > game.Z[b.front()]) {
                res.passes = false;
                res.witness = "supports of mu(" + game.S[si].str() + ") and mu(" +
                              game.S[sj].str() + ") not completely ordered";
                return res;
            }
        }
    return res;
}

bool cho_sobel_monotone(const FiniteGame& game, const PurePBE& pbe) {
    for (size_t zi = 0; zi < pbe.sigma.size(); ++zi)
        for (int sj = pbe.sigma[zi] + 1; sj < game.ns(); ++sj) {
            const auto supp = pbe.support(sj);
            if (!supp.empty() && supp.front() < static_cast<int>(zi))
                return false;
        }
    return true;
}

std::map<int, int> d1_belief_characterization(const FiniteGame& game,
                                              const PurePBE& pbe) {
    for (size_t zi = 0; zi + 1 < pbe.sigma.size(); ++zi)
        if (pbe.sigma[zi] > pbe.sigma[zi + 1])
            throw precondition_error(
                "d1_belief_characterization: sigma not nondecreasing");
    const Certificate c = game.certify_monotone_supermodular();
    if (!c.ok())
        throw precondition_error(
            "d1_belief_characterization: u not monotone-supermodular: " +
            c.witness);

    std::map<int, int> predicted;
    const int lo_action = pbe.sigma.front();
    const int hi_action = pbe.sigma.back();
    for (int si = 0; si < game.ns(); ++si) {
        if (pbe.on_path[si]) continue;
        int pz;
        if (si > hi_action) {
            pz = game.nz() - 1;
        } else if (si < lo_action) {
            pz = 0;
        } else {
            // inside a gap: the type at the discontinuity, i.e. the lowest
            // type whose action lies above the gap
            pz = game.nz() - 1;
            for (int zi = 0; zi < game.nz(); ++zi)
                if (pbe.sigma[zi] > si) {
                    pz = zi;
                    break;
                }
        }
        predicted[si] = pz;
    }

    const D1Result filter = passes_criterion_d1(game, pbe);
    for (const auto& [si, pz] : predicted) {
        const auto it = filter.undominated.find(si);
        if (it == filter.undominated.end()) continue;
        if (it->second.size() == 1 && it->second.front() != pz) {
            std::ostringstream os;
            os << "d1_belief_characterization: prediction z=" << game.Z[pz].str()
               << " but exhaustive filter keeps z=" << game.Z[it->second.front()].str()
               << " at off-path s=" << game.S[si].str();
            throw consistency_error(os.str());
        }
    }
    return predicted;
}

EquivalenceReport d1_equivalence_report(const FiniteGame& game,
                                           const EnumOptions& opt) {
    EquivalenceReport report;
    const Certificate cert = game.certify_monotone_supermodular();
    report.hypothesis_met = cert.ok();
    report.hypothesis_note = cert.ok()
                                 ? (cert.note.empty() ? "certified" : cert.note)
                                 : "hypothesis unmet - equivalence not "
                                   "asserted: " +
                                       cert.witness;
    const auto pbes = enumerate_pure_pbe(game, opt);
    for (const auto& pbe : pbes) {
        EquivalenceEntry e;
        const D1Result d1 = passes_criterion_d1(game, pbe);
        const MonotoneResult sm = is_stronger_monotone(game, pbe);
        e.d1 = d1.passes;
        e.stronger_monotone = sm.passes;
        if (!d1.passes)
            e.d1_witness = "off-path s=" + game.S[d1.witness_s].str() +
                           " keeps type z=" + game.Z[d1.witness_z].str();
        e.sm_witness = sm.witness;
        e.pbe = pbe;
        if (report.hypothesis_met && e.d1 != e.stronger_monotone)
            report.disagreements.push_back(report.entries.size());
        report.entries.push_back(std::move(e));
    }
    return report;
}

FiniteGame random_monotone_supermodular_game(std::mt19937_64& rng) {
    auto draw = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int attempt = 0; attempt < 64; ++attempt) {
        const int nz = draw(2, 4), ns = draw(2, 4), nt = draw(2, 4);
        auto distinct_sorted = [&](int n, int lo, int hi) {
            std::set<int> vals;
            while (static_cast<int>(vals.size()) < n) vals.insert(draw(lo, hi));
            std::vector<Rat> out;
            for (int v : vals) out.push_back(Rat(v));
            return out;
        };
        FiniteGame g;
        g.name = "random";
        g.Z = distinct_sorted(nz, 1, 6);
        g.S = distinct_sorted(ns, 0, 6);
        const Rat a(draw(4, 32), 8);
        const Rat b(draw(4, 24), 8);
        // reactions commensurate with the receiver's ideal points
        const int t_hi = static_cast<int>(
            std::ceil((b * g.Z.back()).to_double())) + 2;
        g.T = distinct_sorted(nt, 0, std::max(t_hi, nt));
        std::vector<Rat> weights(nz);
        Rat total(0);
        for (int zi = 0; zi < nz; ++zi) {
            weights[zi] = Rat(draw(1, 4));
            total = total + weights[zi];
        }
        g.prior.resize(nz);
        for (int zi = 0; zi < nz; ++zi) g.prior[zi] = weights[zi] / total;

        // monotone noise components preserve the hypothesis: adding an
        // increasing function of t and subtracting an increasing function of
        // s leaves all z-differences untouched
        std::vector<Rat> ht(nt, Rat(0)), gs(ns, Rat(0));
        for (int ti = 1; ti < nt; ++ti)
            ht[ti] = ht[ti - 1] + Rat(draw(0, 15), 2048);
        for (int si = 1; si < ns; ++si)
            gs[si] = gs[si - 1] + Rat(draw(0, 15), 2048);

        g.u_table.reserve(static_cast<size_t>(nz) * ns * nt);
        g.g_table.reserve(g.u_table.capacity());
        for (int ti = 0; ti < nt; ++ti)
            for (int si = 0; si < ns; ++si)
                for (int zi = 0; zi < nz; ++zi) {
                    g.u_table.push_back(g.T[ti] - a * g.S[si] / g.Z[zi] +
                                        ht[ti] - gs[si]);
                    const Rat gap = g.T[ti] - b * g.Z[zi];
                    g.g_table.push_back(-(gap * gap) +
                                        Rat(draw(-15, 15), 4096));
                }
        g.validate();
        if (g.certify_monotone_supermodular().ok()) return g;
    }
    throw consistency_error(
        "random_monotone_supermodular_game: generator failed certification");
}

SweepResult d1_equivalence_sweep(int n_games, std::uint64_t seed,
                           const EnumOptions& opt, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult result;
    result.games = n_games;
    std::vector<SweepResult> partial(std::max(threads, 1));
    std::atomic<int> next{0};
    auto worker = [&](int wid) {
        SweepResult& acc = partial[wid];
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_games) break;
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
            const FiniteGame game = random_monotone_supermodular_game(rng);
            const EquivalenceReport rep = d1_equivalence_report(game, opt);
            if (!rep.hypothesis_met) {
                ++acc.hypothesis_unmet;
                continue;
            }
            acc.pbe_total += static_cast<long long>(rep.entries.size());
            acc.disagreement_total +=
                static_cast<long long>(rep.disagreements.size());
            for (std::size_t idx : rep.disagreements) {
                const auto& e = rep.entries[idx];
                if (e.d1 && !e.stronger_monotone)
                    ++acc.d1_implies_sm_violations;
                const D1Result d1 = passes_criterion_d1(game, e.pbe);
                if (!d1.passes) {
                    bool any_weak = false;
                    for (int zi = 0; zi < game.nz(); ++zi)
                        for (int ti = 0; ti < game.nt(); ++ti)
                            if (game.u(ti, d1.witness_s, zi) >=
                                e.pbe.utility[zi])
                                any_weak = true;
                    if (any_weak)
                        ++acc.disagreement_eagerness;
                    else
                        ++acc.disagreement_vacuous;
                }
                std::ostringstream os;
                os << "seed " << (seed + i) << ": d1=" << (e.d1 ? "T" : "F")
                   << " sm=" << (e.stronger_monotone ? "T" : "F") << " "
                   << e.pbe.describe(game);
                acc.counterexamples.push_back(os.str());
            }
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    for (const auto& p : partial) {
        result.pbe_total += p.pbe_total;
        result.disagreement_total += p.disagreement_total;
        result.disagreement_vacuous += p.disagreement_vacuous;
        result.disagreement_eagerness += p.disagreement_eagerness;
        result.d1_implies_sm_violations += p.d1_implies_sm_violations;
        result.hypothesis_unmet += p.hypothesis_unmet;
        result.counterexamples.insert(result.counterexamples.end(),
                                      p.counterexamples.begin(),
                                      p.counterexamples.end());
    }
    std::sort(result.counterexamples.begin(), result.counterexamples.end());
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
}

namespace {

std::vector<Rat> parse_rat_list(const std::vector<std::string>& toks) {
    std::vector<Rat> out;
    out.reserve(toks.size());
    for (const auto& t : toks) out.push_back(Rat::parse(t));
    return out;
}

} // namespace

FiniteGame parse_game_text(const std::string& text) {
    const KvFile kv = KvFile::parse_text(text);
    FiniteGame g;
    g.name = kv.get_or("game", "name", "game");
    g.Z = parse_rat_list(kv.list("game", "types"));
    g.S = parse_rat_list(kv.list("game", "actions"));
    g.T = parse_rat_list(kv.list("game", "reactions"));
    if (kv.has("game", "prior")) {
        g.prior = parse_rat_list(kv.list("game", "prior"));
    } else {
        g.prior.assign(g.Z.size(), Rat(1, static_cast<long long>(g.Z.size())));
    }
    const size_t cells = g.Z.size() * g.S.size() * g.T.size();
    if (kv.has("payoffs", "u_table")) {
        g.u_table = parse_rat_list(kv.list("payoffs", "u_table"));
        g.g_table = parse_rat_list(kv.list("payoffs", "g_table"));
        if (g.u_table.size() != cells || g.g_table.size() != cells)
            throw parse_error("game file: table size must be |T|*|S|*|Z| = " +
                              std::to_string(cells) +
                              " values ordered t-major, then s, then z");
    } else {
        const std::string uf = kv.get("payoffs", "u_form");
        const std::string gf = kv.get("payoffs", "g_form");
        if (uf != "linear_cost")
            throw parse_error("game file: unknown u_form '" + uf + "'");
        if (gf != "quadratic_match")
            throw parse_error("game file: unknown g_form '" + gf + "'");
        const Rat a = Rat::parse(kv.get("payoffs", "a"));
        const Rat b = Rat::parse(kv.get("payoffs", "b"));
        for (const Rat& t : g.T)
            for (const Rat& s : g.S)
                for (const Rat& z : g.Z) {
                    g.u_table.push_back(t - a * s / z);
                    const Rat gap = t - b * z;
                    g.g_table.push_back(-(gap * gap));
                }
    }
    g.validate();
    return g;
}

FiniteGame parse_game_file(const std::string& path) {
    std::ostringstream os;
    {
        std::ifstream f(path);
        if (!f) throw parse_error("cannot open game file '" + path + "'");
        os << f.rdbuf();
    }
    return parse_game_text(os.str());
}

} // namespace sigeq
