#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ergm/motif.hpp"
#include "ergm/params.hpp"

namespace ergm {

inline constexpr long long kMaxBlockAssignments = 10'000'000;  // m^l cap for t_graphon
inline constexpr int kMaxCutRefinement = 16;
inline constexpr int kMaxExhaustivePermutationBlocks = 8;

// Symmetric step function on [0,1]^2 with m equal-measure blocks. Entries are
// kept in [0,1]; the setter mirrors (a,b) onto (b,a).
class StepGraphon {
 public:
  StepGraphon() = default;
  explicit StepGraphon(int m, double fill = 0.0);
  // Row-major m*m values; throws ValidationError if asymmetric or out of range.
  StepGraphon(int m, std::vector<double> values);

  static StepGraphon constant(double u, int m = 1);
  // Complete r-partite indicator scaled by p. With m > r blocks, block a
  // belongs to part floor(a*r/m) (equal parts whenever r divides m).
  static StepGraphon multipartite(int r, double p, int m = 0);

  int blocks() const { return m_; }
  double operator()(int a, int b) const { return values_[static_cast<std::size_t>(a) * m_ + b]; }
  void set(int a, int b, double v);
  std::span<const double> values() const { return values_; }

  // Same function expressed on l equal blocks; l must be a multiple of m.
  StepGraphon refined(int l) const;
  // Blocks relabeled: result(a,b) = (*this)(perm[a], perm[b]).
  StepGraphon permuted(std::span<const int> perm) const;
  // Conditional expectation onto m equal blocks (exact overlap averaging);
  // works for any source block count.
  StepGraphon coarsened(int m) const;

  friend bool operator==(const StepGraphon&, const StepGraphon&) = default;

 private:
  int m_ = 0;
  std::vector<double> values_;
};

// Text format: first line m, then m lines of m whitespace-separated values.
StepGraphon read_graphon(std::istream& in);
StepGraphon read_graphon_file(const std::string& path);
void write_graphon(std::ostream& out, const StepGraphon& h);

// Homomorphism density of H in a step graphon: exact sum over block
// assignments. SizeError if m^l exceeds kMaxBlockAssignments.
double t_graphon(const Motif& h, const StepGraphon& g);

// d t(H, g) / d g(a,b) for each ordered entry (a,b), row-major m*m. The
// derivative with respect to a symmetric free entry is grad(a,b)+grad(b,a).
std::vector<double> t_graphon_gradient(const Motif& h, const StepGraphon& g);

double I_graphon(const StepGraphon& g);
double T_graphon(const StepGraphon& g, const Motif& h2, const Params& p);

struct GraphonFunctionals {
  double t_h1 = 0;
  double t_h2 = 0;
  double I_value = 0;
  double T_value = 0;
  double objective = 0;  // T - I
};
GraphonFunctionals functionals(const StepGraphon& g, const Motif& h2, const Params& p);

// Cut distance sup_{S,T} |int_{SxT} (f-g)| evaluated exactly over block
// subsets of the common refinement. The witness masks refer to blocks of that
// refinement.
struct CutWitness {
  double value = 0;
  int refinement = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
};
CutWitness cut_norm_witness(const StepGraphon& f, const StepGraphon& g);
double cut_norm_dist(const StepGraphon& f, const StepGraphon& g);

// int_{SxT}(f-g) for fractional block memberships s, t in [0,1]^L over the
// common refinement L.
double cut_objective(const StepGraphon& f, const StepGraphon& g, std::span<const double> s,
                     std::span<const double> t);

// Minimum of cut_norm_dist(f o pi, g) over block permutations pi of the
// common refinement. Exhaustive for up to kMaxExhaustivePermutationBlocks
// blocks, otherwise pairwise-swap descent from the identity. Always an upper
// bound on the true cut distance over all measure-preserving maps.
struct DeltaCut {
  double value = 0;
  std::vector<int> permutation;
  bool exhaustive = true;
};
DeltaCut delta_cut_search(const StepGraphon& f, const StepGraphon& g);
double delta_cut(const StepGraphon& f, const StepGraphon& g);

struct AscentResult {
  StepGraphon graphon;
  double objective = 0;
  int iterations = 0;
  bool converged = false;
};

struct AscentOptions {
  int restarts = 4;
  std::uint64_t seed = 0;
  int max_iterations = 10'000;
  double tolerance = 1e-9;
  int workers = 0;  // 0: hardware concurrency
};

// Projected gradient ascent of T - I over m-block step graphons, from the
// constant u* start, the multipartite p* start (when chi(H2) >= 3) and
// `restarts` random starts. Returns the best.
AscentResult ascend_objective(const Motif& h2, const Params& p, int m, const AscentOptions& opts);

// Single ascent run from a given start.
AscentResult ascend_from(const Motif& h2, const Params& p, StepGraphon start, int max_iterations,
                         double tolerance);

}  // namespace ergm
