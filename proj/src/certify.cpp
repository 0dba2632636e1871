#include "signaleq/certify.hpp"

#include "signaleq/errors.hpp"

#include <cmath>
#include <sstream>

namespace sigeq {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
    }
}

namespace {

std::string point(double a, double b) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ")";
    return os.str();
}

std::string point(double a, double b, double c) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

Certificate check_sender_monotone_supermodular(
    const std::function<double(double, double, double)>& u, const Grid3& g,
    const CertifyOptions& opt) {
    Certificate cert{"sender_monotone_supermodular", Verdict::Pass, "", ""};
    if (g.t.size() < 2 || g.s.size() < 2 || g.z.size() < 2)
        throw domain_error("monotone-supermodular check: need >=2 points per axis");
    const double eps = opt.eps_strict;
    bool weak_at_null = false;

    // decreasing in s (adjacent pairs suffice)
    for (double t : g.t)
        for (double z : g.z)
            for (size_t i = 0; i + 1 < g.s.size(); ++i)
                if (!(u(t, g.s[i], z) - u(t, g.s[i + 1], z) >= eps)) {
                    cert.verdict = Verdict::Fail;
                    cert.witness = "not decreasing in s at (t,s->s',z)=" +
                                   point(t, g.s[i], z) + "->s'=" +
                                   std::to_string(g.s[i + 1]);
                    return cert;
                }
    // increasing in t
    for (double s : g.s)
        for (double z : g.z)
            for (size_t i = 0; i + 1 < g.t.size(); ++i)
                if (!(u(g.t[i + 1], s, z) - u(g.t[i], s, z) >= eps)) {
                    cert.verdict = Verdict::Fail;
                    cert.witness = "not increasing in t at (t,s,z)=" +
                                   point(g.t[i], s, z);
                    return cert;
                }
    // increasing in z; weak at the null action where u(t,0,z) = t - c(0,z)
    // is flat in z by construction
    for (double t : g.t)
        for (double s : g.s)
            for (size_t i = 0; i + 1 < g.z.size(); ++i) {
                const double d = u(t, s, g.z[i + 1]) - u(t, s, g.z[i]);
                if (s == 0.0) {
                    if (d < -eps) {
                        cert.verdict = Verdict::Fail;
                        cert.witness = "decreasing in z at null action, (t,s,z)=" +
                                       point(t, s, g.z[i]);
                        return cert;
                    }
                    if (d < eps) weak_at_null = true;
                } else if (!(d >= eps)) {
                    cert.verdict = Verdict::Fail;
                    cert.witness =
                        "not increasing in z at (t,s,z)=" + point(t, s, g.z[i]);
                    return cert;
                }
            }
    // strict single crossing in ((t,s); z): for (t',s') > (t'',s'') and
    // z' > z'', u(t',s',z'') >= u(t'',s'',z'') implies u(t',s',z') > u(t'',s'',z')
    for (size_t ti = 0; ti < g.t.size(); ++ti)
        for (size_t si = 0; si < g.s.size(); ++si)
            for (size_t tj = ti; tj < g.t.size(); ++tj)
                for (size_t sj = si; sj < g.s.size(); ++sj) {
                    if (tj == ti && sj == si) continue;
                    for (size_t zi = 0; zi + 1 < g.z.size(); ++zi)
                        for (size_t zj = zi + 1; zj < g.z.size(); ++zj) {
                            const double lo_diff =
                                u(g.t[tj], g.s[sj], g.z[zi]) -
                                u(g.t[ti], g.s[si], g.z[zi]);
                            if (lo_diff < -eps) continue;
                            const double hi_diff =
                                u(g.t[tj], g.s[sj], g.z[zj]) -
                                u(g.t[ti], g.s[si], g.z[zj]);
                            if (!(hi_diff >= eps)) {
                                cert.verdict = Verdict::Fail;
                                cert.witness =
                                    "single crossing fails: (t,s)=" +
                                    point(g.t[ti], g.s[si]) + "->" +
                                    point(g.t[tj], g.s[sj]) + ", z=" +
                                    std::to_string(g.z[zi]) + "->" +
                                    std::to_string(g.z[zj]);
                                return cert;
                            }
                        }
                }
    if (weak_at_null)
        cert.note = "monotone in z only weakly at the null action";
    return cert;
}

namespace {

// Schedule-based limit tester: evaluates f along the sequence and reports
// Pass if the threshold is crossed, Fail if the values visibly stabilize to
// something finite, else Inconclusive.
Verdict limit_blows_up(const std::function<double(double)>& f,
                       const std::vector<double>& schedule, double threshold,
                       std::string& note) {
    double prev = 0.0;
    bool have_prev = false;
    for (double q : schedule) {
        const double val = f(q);
        if (!finite(val) || val >= threshold) return Verdict::Pass;
        if (have_prev) {
            const double rel =
                std::abs(val - prev) / std::max(1.0, std::abs(val));
            if (rel < 1e-6) {
                note = "sequence stabilizes near " + std::to_string(val);
                return Verdict::Fail;
            }
        }
        prev = val;
        have_prev = true;
    }
    note = "growing but below blow-up threshold";
    return Verdict::Inconclusive;
}

} // namespace

std::vector<Certificate> check_assumptions_1_to_7(
    const ModelPrimitives& m, const std::vector<double>& s_in,
    const CertifyOptions& opt) {
    std::vector<Certificate> out;
    const double eps = opt.eps_strict;
    const int n = opt.grid_n;
    std::vector<double> zs = linspace(m.Z.lo, m.Z.hi, n);
    std::vector<double> xs = linspace(m.X.lo, m.X.hi, n);
    std::vector<double> ss = s_in;
    if (ss.empty()) ss = linspace(0.0, 1.0, n);

    // Values of c can be +inf where the cost blows up (bottom type under
    // Assumption 7); such points are skipped in difference checks and noted.
    auto cval = [&](double s, double z) { return m.c(s, z); };
    bool skipped_nonfinite = false;
    auto finite_pair = [&](double a, double b) {
        if (finite(a) && finite(b)) return true;
        skipped_nonfinite = true;
        return false;
    };

    { // Assumption 1: c increasing in s, decreasing in z; -c strictly
      // supermodular in (s,z)
        Certificate cert{"assumption1_cost_monotone_supermodular",
                         Verdict::Pass, "", ""};
        for (double z : zs)
            for (size_t i = 0; i + 1 < ss.size() && cert.ok(); ++i) {
                const double a = cval(ss[i], z), b = cval(ss[i + 1], z);
                if (!finite_pair(a, b)) continue;
                if (!(b - a >= eps)) {
                    cert.verdict = Verdict::Fail;
                    cert.witness =
                        "c not increasing in s at " + point(ss[i], z);
                }
            }
        for (double s : ss)
            for (size_t i = 0; i + 1 < zs.size() && cert.ok(); ++i) {
                const double a = cval(s, zs[i]), b = cval(s, zs[i + 1]);
                if (!finite_pair(a, b)) continue;
                const double d = a - b;
                if (s == 0.0 ? d < -eps : !(d >= eps)) {
                    cert.verdict = Verdict::Fail;
                    cert.witness =
                        "c not decreasing in z at " + point(s, zs[i]);
                }
            }
        // strict supermodularity of -c: cross differences
        for (size_t i = 0; i + 1 < ss.size() && cert.ok(); ++i)
            for (size_t j = 0; j + 1 < zs.size() && cert.ok(); ++j) {
                if (ss[i + 1] <= ss[i]) continue;
                const double c11 = cval(ss[i + 1], zs[j + 1]),
                             c01 = cval(ss[i], zs[j + 1]),
                             c10 = cval(ss[i + 1], zs[j]),
                             c00 = cval(ss[i], zs[j]);
                if (!finite_pair(c11, c10) || !finite_pair(c01, c00)) continue;
                if (!((c10 - c00) - (c11 - c01) >= eps)) {
                    cert.verdict = Verdict::Fail;
                    cert.witness = "-c not strictly supermodular at s=" +
                                   std::to_string(ss[i]) + ", z=" +
                                   std::to_string(zs[j]);
                }
            }
        if (skipped_nonfinite)
            cert.note = "non-finite cost values near the boundary skipped";
        out.push_back(cert);
    }

    { // Assumption 2: v supermodular in (x,s,z), strictly in (z,x);
      // increasing in x
        Certificate cert{"assumption2_surplus_supermodular", Verdict::Pass, "",
                         ""};
        auto cross = [&](auto at, const std::vector<double>& A,
                         const std::vector<double>& B, bool strict,
                         const char* label) {
            for (size_t i = 0; i + 1 < A.size() && cert.ok(); ++i)
                for (size_t j = 0; j + 1 < B.size() && cert.ok(); ++j) {
                    const double d = (at(A[i + 1], B[j + 1]) - at(A[i], B[j + 1])) -
                                     (at(A[i + 1], B[j]) - at(A[i], B[j]));
                    if (strict ? !(d >= eps) : d < -eps) {
                        cert.verdict = Verdict::Fail;
                        cert.witness = std::string(label) + " at " +
                                       point(A[i], B[j]);
                    }
                }
        };
        // pairwise cross differences, sliced along the third coordinate
        for (size_t k = 0; k < zs.size(); k += 2) {
            const double z = zs[k];
            cross([&](double x, double s) { return m.v(x, s, z); }, xs, ss,
                  false, "v not supermodular in (x,s)");
        }
        for (size_t k = 0; k < ss.size(); k += 2) {
            const double s = ss[k];
            cross([&](double x, double z) { return m.v(x, s, z); }, xs, zs,
                  true, "v not strictly supermodular in (x,z)");
        }
        for (size_t k = 0; k < xs.size(); k += 2) {
            const double x = xs[k];
            cross([&](double s, double z) { return m.v(x, s, z); }, ss, zs,
                  false, "v not supermodular in (s,z)");
        }
        for (double s : ss)
            for (double z : zs)
                for (size_t i = 0; i + 1 < xs.size() && cert.ok(); ++i)
                    if (!(m.v(xs[i + 1], s, z) - m.v(xs[i], s, z) >= eps)) {
                        cert.verdict = Verdict::Fail;
                        cert.witness =
                            "v not increasing in x at " + point(xs[i], s, z);
                    }
        out.push_back(cert);
    }

    { // Assumption 3: v >= 0, increasing in z (weak at x = x_lo, where
      // Assumption 7(i) models force v(x_lo,s,z) = 0), non-decreasing in s
        Certificate cert{"assumption3_surplus_monotone", Verdict::Pass, "", ""};
        bool weak_at_xlo = false;
        for (double x : xs)
            for (double s : ss)
                for (double z : zs)
                    if (cert.ok() && m.v(x, s, z) < -eps) {
                        cert.verdict = Verdict::Fail;
                        cert.witness = "v negative at " + point(x, s, z);
                    }
        for (double x : xs)
            for (double s : ss)
                for (size_t i = 0; i + 1 < zs.size() && cert.ok(); ++i) {
                    const double d = m.v(x, s, zs[i + 1]) - m.v(x, s, zs[i]);
                    if (x == m.X.lo) {
                        if (d < -eps) {
                            cert.verdict = Verdict::Fail;
                            cert.witness = "v decreasing in z at " +
                                           point(x, s, zs[i]);
                        } else if (d < eps) {
                            weak_at_xlo = true;
                        }
                    } else if (!(d >= eps)) {
                        cert.verdict = Verdict::Fail;
                        cert.witness =
                            "v not increasing in z at " + point(x, s, zs[i]);
                    }
                }
        for (double x : xs)
            for (double z : zs)
                for (size_t i = 0; i + 1 < ss.size() && cert.ok(); ++i)
                    if (m.v(x, ss[i + 1], z) - m.v(x, ss[i], z) < -eps) {
                        cert.verdict = Verdict::Fail;
                        cert.witness =
                            "v decreasing in s at " + point(x, ss[i], z);
                    }
        if (weak_at_xlo && cert.ok())
            cert.note = "increasing in z only weakly at x = x_lo";
        out.push_back(cert);
    }

    { // Assumption 4: c(0,z) = 0 and c(s,z) -> inf as s -> inf
        Certificate cert{"assumption4_cost_anchor_and_growth", Verdict::Pass,
                         "", ""};
        for (double z : zs)
            if (cert.ok() && std::abs(m.c(0.0, z)) > 1e-10) {
                cert.verdict = Verdict::Fail;
                cert.witness = "c(0,z) != 0 at z=" + std::to_string(z);
            }
        if (cert.ok()) {
            std::string note;
            const double zmid = zs[zs.size() / 2];
            const Verdict lim = limit_blows_up(
                [&](double s) { return m.c(s, zmid); },
                {1e2, 1e4, 1e6, 1e8, 1e10}, opt.blowup_threshold, note);
            if (lim != Verdict::Pass) {
                cert.verdict = lim;
                cert.note = "s->inf growth: " + note;
            }
        }
        out.push_back(cert);
    }

    { // Assumption 5: only binds when v is increasing in s
        Certificate cert{"assumption5_inada", Verdict::Pass, "", ""};
        bool v_moves_in_s = false;
        for (double x : xs)
            for (double z : zs)
                for (size_t i = 0; i + 1 < ss.size(); ++i)
                    if (m.v(x, ss[i + 1], z) - m.v(x, ss[i], z) > eps)
                        v_moves_in_s = true;
        if (!v_moves_in_s) {
            cert.note = "v constant in s; clause vacuous";
        } else {
            const double xmid = xs[xs.size() / 2];
            const double zmid = zs[zs.size() / 2];
            // concavity of v, strict convexity of c along s
            std::vector<double> sg = linspace(0.01, 4.0, 17);
            for (size_t i = 0; i + 2 < sg.size() && cert.ok(); ++i) {
                const double v2 = m.v(xmid, sg[i + 2], zmid) -
                                  2 * m.v(xmid, sg[i + 1], zmid) +
                                  m.v(xmid, sg[i], zmid);
                if (v2 > eps) {
                    cert.verdict = Verdict::Fail;
                    cert.witness =
                        "v not concave in s near s=" + std::to_string(sg[i]);
                }
                const double c2 = m.c(sg[i + 2], zmid) -
                                  2 * m.c(sg[i + 1], zmid) + m.c(sg[i], zmid);
                if (cert.ok() && !(c2 >= eps)) {
                    cert.verdict = Verdict::Fail;
                    cert.witness = "c not strictly convex in s near s=" +
                                   std::to_string(sg[i]);
                }
            }
            if (cert.ok()) {
                std::string n1, n2, n3, n4;
                const Verdict vs0 = limit_blows_up(
                    [&](double q) { return m.v_s(xmid, q, zmid); },
                    {1e-2, 1e-4, 1e-6, 1e-8}, opt.blowup_threshold, n1);
                const Verdict csinf = limit_blows_up(
                    [&](double q) { return m.c_s(q, zmid); },
                    {1e2, 1e4, 1e6, 1e8}, opt.blowup_threshold, n2);
                // v_s -> 0 and c_s -> 0 limits: check decay directly
                const bool vs_inf_ok =
                    std::abs(m.v_s(xmid, 1e8, zmid)) < 1e-2;
                const bool cs0_ok = std::abs(m.c_s(1e-8, zmid)) < 1e-2;
                if (vs0 == Verdict::Fail || csinf == Verdict::Fail ||
                    !vs_inf_ok || !cs0_ok) {
                    cert.verdict = Verdict::Fail;
                    cert.witness = "Inada slope conditions fail";
                    cert.note = n1 + " " + n2;
                } else if (vs0 == Verdict::Inconclusive ||
                           csinf == Verdict::Inconclusive) {
                    cert.verdict = Verdict::Inconclusive;
                    cert.note = "slope limits below blow-up threshold";
                }
            }
        }
        out.push_back(cert);
    }

    { // Assumption 6: strictly positive finite densities
        Certificate cert{"assumption6_positive_densities", Verdict::Pass, "",
                         ""};
        for (double z : zs)
            if (cert.ok() && (!finite(m.G.pdf(z)) || !(m.G.pdf(z) > 0.0))) {
                cert.verdict = Verdict::Fail;
                cert.witness = "G' not in (0,inf) at z=" + std::to_string(z);
            }
        for (double x : xs)
            if (cert.ok() && (!finite(m.H.pdf(x)) || !(m.H.pdf(x) > 0.0))) {
                cert.verdict = Verdict::Fail;
                cert.witness = "H' not in (0,inf) at x=" + std::to_string(x);
            }
        out.push_back(cert);
    }

    { // Assumption 7: cost blow-up at the bottom type plus clause (i) or (ii)
        Certificate cert{"assumption7_bottom_cost_blowup", Verdict::Pass, "",
                         ""};
        std::string note;
        double sprobe = 1.0;
        for (double s : ss)
            if (s > 0.0) {
                sprobe = s;
                break;
            }
        const Verdict lim = limit_blows_up(
            [&](double e) { return m.c(sprobe, m.Z.lo + e); },
            {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8},
            opt.blowup_threshold, note);
        if (lim != Verdict::Pass) {
            cert.verdict = lim;
            cert.witness = lim == Verdict::Fail
                               ? "c(s, z_lo + eps) bounded: " + note
                               : "";
            cert.note = note;
            out.push_back(cert);
            return out;
        }
        // clause (i): v constant in s, v(x_lo,s,z) = 0, v > 0 interior
        bool clause_i = true;
        for (double x : xs)
            for (double z : zs)
                for (size_t i = 0; i + 1 < ss.size(); ++i)
                    if (std::abs(m.v(x, ss[i + 1], z) - m.v(x, ss[i], z)) > eps)
                        clause_i = false;
        if (clause_i)
            for (double s : ss)
                for (double z : zs)
                    if (std::abs(m.v(m.X.lo, s, z)) > eps) clause_i = false;
        if (clause_i)
            for (double x : xs)
                for (double z : zs)
                    if (x > m.X.lo + 1e-9 && z > m.Z.lo + 1e-9)
                        for (double s : ss)
                            if (!(m.v(x, s, z) > eps)) clause_i = false;
        // clause (ii): v(x,0,z) = 0, v increasing in s, v(x,0,z)-c(0,z) >= 0
        bool clause_ii = true;
        for (double x : xs)
            for (double z : zs) {
                if (std::abs(m.v(x, 0.0, z)) > eps) clause_ii = false;
                for (size_t i = 0; i + 1 < ss.size(); ++i)
                    if (!(m.v(x, ss[i + 1], z) - m.v(x, ss[i], z) >= eps))
                        clause_ii = false;
            }
        if (!clause_i && !clause_ii) {
            cert.verdict = Verdict::Fail;
            cert.witness = "neither clause (i) nor (ii) on v holds";
        } else {
            cert.note = clause_i ? "clause (i)" : "clause (ii)";
        }
        out.push_back(cert);
    }

    return out;
}

} // namespace sigeq
