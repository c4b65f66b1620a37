#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gl/norm_spec.hpp"

namespace gl {

// ---------------------------------------------------------------------------
// Families

struct TestFamily {
  std::string name;
  std::string description;
  std::vector<std::string> labels;
  std::function<Rearrangement2D(std::size_t)> generate;

  std::size_t count() const { return labels.size(); }
};

/// c in {0.1, 0.25, 0.5, 1, 1.5, 2, 3, 4, 8, 10}.
TestFamily constants_family();
/// Height-1 indicators of [0,a1]x[0,a2], sides 2^-k with k in {1,4,8} x {1,3,6,10}.
TestFamily indicators_family();
/// Step functions on random dyadic partitions with random non-increasing levels.
TestFamily dyadic_steps_family(std::uint64_t seed = 20240601, std::size_t count = 12);
/// analytic_example1 over the theta x delta lattice (members with a negative
/// log exponent are skipped).
TestFamily example1_family(const ParamPair& p = {2, 2}, const ParamPair& r = {2, 2},
                           const std::vector<double>& thetas = {1.5, 2.0, 3.0},
                           const std::vector<double>& deltas = {0.25, 0.5, 1.0});
/// The four families above with their defaults.
std::vector<TestFamily> registered_families();
TestFamily combine_families(const std::vector<TestFamily>& parts, std::string name);
/// Throws Parse for unknown names; "all" gives the combination.
TestFamily family_by_name(const std::string& name);

/// Portable uniform double in [0,1) from a 64-bit engine output.
double unit_uniform(std::uint64_t bits);

// ---------------------------------------------------------------------------
// Parallel evaluation

/// GL_THREADS (0 or unset = hardware concurrency), at least 1.
std::size_t thread_count();
/// Calls fn(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t threads = 0);

// ---------------------------------------------------------------------------
// Embedding checks

enum class MemberStatus { Ok, Vacuous, Violation, Error };
const char* to_string(MemberStatus s) noexcept;

struct MemberOutcome {
  std::size_t index = 0;
  std::string label;
  /// Per refinement level.
  std::vector<double> left, right, ratio;
  MemberStatus status = MemberStatus::Ok;
  std::string note;
};

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

enum class Verdict { Pass, Inconclusive, Diverged, Violated };
const char* to_string(Verdict v) noexcept;

struct EmbeddingReport {
  std::string title;
  NormSpec left;
  NormSpec right;
  std::string family;
  std::vector<MemberOutcome> members;
  /// Max ratio over Ok members at each refinement level.
  std::vector<double> c_hat_levels;
  double c_hat = 0.0;
  double drift = 0.0;
  bool stable = false;
  std::vector<std::string> failures;
  std::vector<Check> checks;
  Verdict verdict = Verdict::Pass;

  /// Recomputes the verdict from members, stability and checks.
  void finalize();
  std::size_t count(MemberStatus s) const;
};

struct VerifyConfig {
  /// Refinement levels (base plus doublings).
  std::size_t levels = 3;
  double drift_tol = 0.05;
  std::size_t threads = 0;
  LogGrid grid;
  SearchConfig search;
  DyadicTruncation trunc;
};

/// Ratios ||f||_left / ||f||_right. A member whose right norm is infinite,
/// zero or unconverged is Vacuous; left infinite with right finite is a
/// Violation; an unconverged left norm and thrown errors are Error.
/// Throws FamilyEmpty for an empty family.
EmbeddingReport check_embedding(const NormSpec& left, const NormSpec& right, const TestFamily& family,
                                const VerifyConfig& cfg = {}, std::string title = "embedding");

/// Adds a check that every Ok ratio lies in [lo, hi] (relative slack applied).
void bound_ratios(EmbeddingReport& rep, double lo, double hi, double slack, const std::string& name);

// ---------------------------------------------------------------------------
// Theorems

struct Theorem1Report {
  EmbeddingReport left;   // L_{p,q} against GL^{-theta}_{p,q}
  EmbeddingReport right;  // GL^{theta}_{p,q} against L_{p,q}
  Verdict verdict() const;
};

/// Both embeddings GL^{-theta} -> L -> GL^{theta}; theta > 0.
Theorem1Report verify_theorem1(const ParamPair& p, const ParamPair& q, const ThetaPair& theta,
                               const TestFamily& family, const VerifyConfig& cfg = {});
/// q = p.
Theorem1Report verify_theorem1_corollary(const ParamPair& p, const ThetaPair& theta, const TestFamily& family,
                                         const VerifyConfig& cfg = {});
/// Guarded log-weight weak norm against the grand weak norm on (0, e^{-max theta}]^2.
EmbeddingReport verify_theorem2(const ParamPair& p, const ThetaPair& theta, const TestFamily& family,
                                const VerifyConfig& cfg = {});
EmbeddingReport verify_theorem3(const ParamPair& p, const ParamPair& q, const ThetaPair& theta, const ThetaPair& s,
                                const TestFamily& family, const VerifyConfig& cfg = {});
EmbeddingReport verify_theorem4(const ParamPair& p, const ParamPair& q, const ParamPair& rq, const ThetaPair& theta,
                                const TestFamily& family, const VerifyConfig& cfg = {});
EmbeddingReport verify_theorem5(const ParamPair& p, const ParamPair& q, const ThetaPair& theta, const Pair2& delta,
                                const TestFamily& family, const VerifyConfig& cfg = {});
EmbeddingReport verify_theorem6(const ParamPair& p, const ParamPair& q, const ParamPair& tau, const ThetaPair& theta,
                                const ThetaPair& lam, const TestFamily& family, const VerifyConfig& cfg = {});
/// Dyadic against continuous grand norm with q = tau.
EmbeddingReport verify_theorem7(const ParamPair& p, const ParamPair& tau, const ThetaPair& theta,
                                const TestFamily& family, const VerifyConfig& cfg = {});

struct Example1Outcome {
  bool member = false;
  bool near_critical = false;
  std::vector<double> values;  // per refinement level
  double drift = 0.0;
  std::string note;
};

/// Grand norm GL^theta_{p,r} of analytic_example1 under joint refinement of
/// t_min, nodes and the epsilon scan. near_critical when min(delta) < 0.05.
Example1Outcome verify_example1_detail(const ParamPair& p, const ParamPair& r, const ThetaPair& theta,
                                       const ThetaPair& delta, const VerifyConfig& cfg = {});
bool verify_example1(const ParamPair& p, const ParamPair& r, const ThetaPair& theta, const ThetaPair& delta,
                     const VerifyConfig& cfg = {});

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json to_json(const EmbeddingReport& r);
nlohmann::ordered_json to_json(const Theorem1Report& r);
nlohmann::ordered_json to_json(const Example1Outcome& r);
nlohmann::ordered_json to_json(const VerifyConfig& c);

}  // namespace gl
