#pragma once

#include "signaleq/certify.hpp"
#include "signaleq/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace sigeq {

// A finite one-sender/one-receiver signaling game. Types, actions, and
// reactions are chains of rationals; payoff tables are exact, so equilibrium
// and refinement verdicts never depend on float tolerances.
struct FiniteGame {
    std::string name;
    std::vector<Rat> Z, S, T; // strictly increasing
    std::vector<Rat> prior;   // positive, sums to one
    std::vector<Rat> u_table; // indexed [t][s][z]
    std::vector<Rat> g_table;

    Rat u(int ti, int si, int zi) const {
        return u_table[(static_cast<size_t>(ti) * S.size() + si) * Z.size() +
                       zi];
    }
    Rat g(int ti, int si, int zi) const {
        return g_table[(static_cast<size_t>(ti) * S.size() + si) * Z.size() +
                       zi];
    }

    int nz() const { return static_cast<int>(Z.size()); }
    int ns() const { return static_cast<int>(S.size()); }
    int nt() const { return static_cast<int>(T.size()); }

    void validate() const;

    static FiniteGame from_callables(
        std::vector<Rat> Z, std::vector<Rat> S, std::vector<Rat> T,
        std::vector<Rat> prior,
        const std::function<double(double, double, double)>& u, // (t,s,z)
        const std::function<double(double, double, double)>& g);

    // Exact monotone-supermodular certificate over the whole table
    // (monotone in z is allowed to be weak at the action 0, where a cost
    // anchored at c(0,z) = 0 makes u flat).
    Certificate certify_monotone_supermodular() const;
};

// Parses the documented game-file format (sections [game], [payoffs]).
FiniteGame parse_game_file(const std::string& path);
FiniteGame parse_game_text(const std::string& text);

struct PurePBE {
    std::vector<int> sigma;           // type index -> action index
    std::vector<int> tau;             // action index -> reaction index
    std::vector<std::vector<Rat>> mu; // action index -> distribution over Z
    std::vector<Rat> utility;         // U(z) in equilibrium
    std::vector<char> on_path;        // action index -> chosen by some type
    // Definition-1 conditions, re-verified on the finished triple
    bool sender_rational = false;
    bool receiver_rational = false;
    bool bayes_consistent = false;

    std::vector<int> support(int si) const;
    std::string describe(const FiniteGame& g) const;
};

struct EnumOptions {
    // off-path belief grid = all point masses + uniform + these extras
    std::vector<std::vector<Rat>> extra_beliefs;
    // receiver argmax ties: lowest reaction by default; optionally enumerate
    // every tie selection when their product count stays small
    bool enumerate_tie_selections = false;
    int max_tie_combos = 8;
    std::uint64_t budget = 20'000'000; // candidate (sigma, belief) pairs
};

// Exhaustive pure-strategy PBE enumeration over the off-path belief grid.
// Throws resource_error (carrying the needed count) past the budget.
std::vector<PurePBE> enumerate_pure_pbe(const FiniteGame& game,
                                        const EnumOptions& opt = {});

struct D1Result {
    bool passes = true;
    int witness_s = -1; // off-path action where the support escapes Z'
    int witness_z = -1; // offending supported type
    std::map<int, std::vector<int>> undominated; // off-path s -> Z' indices
};

D1Result passes_criterion_d1(const FiniteGame& game, const PurePBE& pbe);

struct MonotoneResult {
    bool passes = true;
    std::string witness;
};

MonotoneResult is_stronger_monotone(const FiniteGame& game, const PurePBE& pbe);

// Cho-Sobel belief monotonicity: an action above one chosen by type z is
// never attributed to a type below z.
bool cho_sobel_monotone(const FiniteGame& game, const PurePBE& pbe);

// Predicted D1 singleton supports for off-path actions (top type above the
// range of sigma, bottom type below it, the upper adjacent type inside a
// gap). Cross-checked against the exhaustive filter whenever the filter's
// undominated set is a singleton; mismatch throws consistency_error.
std::map<int, int> d1_belief_characterization(const FiniteGame& game,
                                              const PurePBE& pbe);

struct EquivalenceEntry {
    PurePBE pbe;
    bool d1 = false;
    bool stronger_monotone = false;
    std::string d1_witness;
    std::string sm_witness;
};

struct EquivalenceReport {
    bool hypothesis_met = false;
    std::string hypothesis_note;
    std::vector<EquivalenceEntry> entries;
    std::vector<std::size_t> disagreements; // indices into entries
    bool asserted() const { return hypothesis_met; }
    bool equivalence_holds() const {
        return hypothesis_met && disagreements.empty();
    }
};

EquivalenceReport d1_equivalence_report(const FiniteGame& game,
                                           const EnumOptions& opt = {});

// Random monotone-supermodular game: u = t - a s / z plus monotone noise in
// t and s (preserves the hypothesis), g = -(t - b z)^2 plus tie-breaking
// noise. Sizes drawn from {2,3,4}. Re-certified after construction.
FiniteGame random_monotone_supermodular_game(std::mt19937_64& rng);

struct SweepResult {
    int games = 0;
    long long pbe_total = 0;
    long long disagreement_total = 0;
    // disagreement anatomy: off-path actions nobody can gain from (the
    // containment test prunes every type vacuously) versus actions where the
    // reaction grid cannot rank the types' eagerness
    long long disagreement_vacuous = 0;
    long long disagreement_eagerness = 0;
    long long d1_implies_sm_violations = 0; // zero observed: the forward
                                            // direction survives finiteness
    int hypothesis_unmet = 0;
    std::vector<std::string> counterexamples; // verbatim descriptions
    double seconds = 0.0;
};

SweepResult d1_equivalence_sweep(int n_games, std::uint64_t seed,
                           const EnumOptions& opt = {}, int threads = 1);

} // namespace sigeq
