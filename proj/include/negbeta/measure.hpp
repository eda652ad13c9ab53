#pragma once
#include "negbeta/automaton.hpp"
#include "negbeta/base.hpp"
#include "negbeta/codes.hpp"
#include "negbeta/exchange.hpp"
#include "negbeta/word.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace negbeta {

struct SupportCode {
    CodeFamily code;
    std::string label;             // "C_beta", "{1,00}" or "Delta_<n>"
    Classification classification;
    bool boundary = false;
    CodeStatistics stats;          // Kraft sum and average length with tail estimates
    bool kraft_ok = false;         // |Kraft - 1| within tolerance with a valid tail
    std::vector<std::string> candidates; // families tried at a boundary
    double abs_beta = 0;
};

inline constexpr double kKraftTolerance = 1e-6;

SupportCode support_code(const Base& base, std::size_t max_len = 40, double kraft_tol = kKraftTolerance);

struct CylinderQuery {
    Word word;
    long offset = 0;
};

struct CylinderMeasure {
    double value = 0;
    double error = 0;              // truncation error estimate
    bool in_code = false;          // the word is a member of P_beta
    bool in_support = true;        // factor of P_beta*
    bool intransitive = false;
    std::string method;            // "code", "completion" or "automaton"
    double automaton_value = 0;    // Perron measure of the support automaton
};

// Champernowne measure of the cylinder; independent of the offset.
CylinderMeasure cylinder_measure(const CylinderQuery& query, const SupportCode& support, const Base& base);

struct PatternMatch {
    int family = 0;  // 1, 2 or 3
    Word pattern;
    std::size_t position = 0;
};

struct IntransitiveResult {
    bool intransitive = false;
    std::optional<PatternMatch> match; // empty when only the automaton rules the word out
    std::optional<bool> automaton_factor; // factor of the support automaton, when d is eventually periodic
    int level = -1;
};

// The three intransitive pattern families for a base at level n with leading digit k1 of the exchanged sequence.
std::vector<PatternMatch> intransitive_patterns(int level, int k1);
IntransitiveResult is_intransitive(const Word& word, const Base& base);

struct QueryFrequency {
    Word word;
    double analytic = 0;
    double empirical = 0;
    double stderr_binomial = 0;
    double stderr_batch = 0;       // batch means over kBatches
    std::uint64_t hits = 0;
};

struct SimulationReport {
    std::string generator = "mt19937_64";
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    int precision = 0;
    std::uint64_t reseeds = 0;
    std::vector<QueryFrequency> queries;
    int level = -1;
    double support_fraction = -1;  // time in the union of T^k([l, t_n]), k <= l(u_n)
    double closed_fraction = -1;   // same with k running until the union stops growing
};

struct SimulationOptions {
    int precision = 128;
    int perturbation_exponent = 100; // each step adds +-2^-e
    std::size_t batches = 100;
    bool analytic = true;            // fill analytic values from the support automaton
};

SimulationReport orbit_simulate(const Base& base, std::uint64_t steps, std::uint64_t seed,
                                const std::vector<CylinderQuery>& queries, const SimulationOptions& opt = {});

// Independent seeds seed, seed+1, ... on worker threads, merged by step-weighted averages.
SimulationReport orbit_simulate_parallel(const Base& base, std::uint64_t steps, std::uint64_t seed,
                                         const std::vector<CylinderQuery>& queries, unsigned workers,
                                         const SimulationOptions& opt = {});
SimulationReport merge_reports(const std::vector<SimulationReport>& parts);

} // namespace negbeta
