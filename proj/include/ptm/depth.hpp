#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ptm/types.hpp"
#include "ptm/univariate.hpp"

namespace ptm {

// How the sup over directions is carried out.
struct DirectionStrategy {
  enum class Kind { Exact2D, RandomSphere, DataDriven, Hybrid };
  Kind kind = Kind::Exact2D;
  int count = 300;         // RandomSphere direction count
  int cap = 500;           // DataDriven cap (0 = keep all pairs)
  std::uint64_t seed = 0;

  static DirectionStrategy exact2d() { return {Kind::Exact2D, 0, 0, 0}; }
  static DirectionStrategy random_sphere(int count, std::uint64_t seed) {
    return {Kind::RandomSphere, count, 0, seed};
  }
  static DirectionStrategy data_driven(int cap, std::uint64_t seed) {
    return {Kind::DataDriven, 0, cap, seed};
  }
  static DirectionStrategy hybrid(int cap, int count, std::uint64_t seed) {
    return {Kind::Hybrid, count, cap, seed};
  }
  // Study default: exact in the plane up to the size cutoff, pooled
  // data-driven + random directions beyond it.
  static DirectionStrategy auto_for(int n, int d, const LocationScalePair& pair,
                                    std::uint64_t seed = 0);
};

// Size cutoff for the exact planar sweep; larger inputs fall back to the
// pooled direction set with local angle refinement.
inline constexpr int kExact2DMaxN = 200;

struct DepthEvaluation {
  double outlyingness = 0.0;  // may be +infinity
  double depth = 1.0;         // 1 / (1 + outlyingness), 0 when infinite
  Vec witness;                // unit direction attaining the sup
  std::string method;
  bool tied = false;          // sup attained at several distinct directions
};

// Signed deviation of the projection u'x from the location/scale of the
// projected sample: (u'x - mu) / sigma. 0/0 yields 0; a nonzero numerator
// over a zero scale yields +/-infinity.
double g_deviation(const Vec& x, const Vec& u, const PointCloud& data,
                   const LocationScalePair& pair);

// The finite direction set a strategy induces on a dataset. RandomSphere and
// DataDriven are deterministic in (strategy, data); in one dimension every
// strategy reduces to {+1, -1}; Exact2D returns the candidate angles of the
// sweep table.
std::vector<Vec> direction_set(const DirectionStrategy& strategy,
                               const PointCloud& data);

// Precomputed machinery for repeated depth queries against one dataset.
// Building once and querying many times is what keeps the simulation studies
// affordable: the candidate table depends only on the data, not the query.
class DepthEvaluator {
public:
  DepthEvaluator(PointCloud data, LocationScalePair pair,
                 DirectionStrategy strategy);

  DepthEvaluation evaluate(const Vec& x) const;
  double outlyingness(const Vec& x) const;  // fast path, no witness
  double depth(const Vec& x) const;

  const std::string& method() const { return method_; }
  const PointCloud& data() const { return data_; }
  const LocationScalePair& pair() const { return pair_; }
  int dim() const { return data_.dim(); }
  // Number of directions (or candidate angles) in the table; 0 in closed form.
  int table_size() const;
  // Smallest positive projected scale seen in the table (Lipschitz constant
  // of the outlyingness is 1 over this). +infinity if the table is empty.
  double min_scale() const;
  // Table directions (unit vectors); empty in closed form.
  std::vector<Vec> directions() const;

private:
  enum class Mode { MeanSdClosed, Table };
  Mode mode_ = Mode::Table;
  PointCloud data_;
  LocationScalePair pair_;
  DirectionStrategy strategy_;
  std::string method_;
  bool refine_ = false;  // golden-section angle refinement per query (2-D)

  // Table mode: unit directions stacked row-wise with location/scale per row.
  Mat dirs_;   // m x d
  Vec mu_;     // m
  Vec sigma_;  // m

  // MeanSd closed form.
  Vec mean_;
  Mat cov_evec_;
  Vec cov_eval_;  // ascending
  double eig_tol_ = 0.0;

  void build_meansd();
  void build_table();
  DepthEvaluation evaluate_meansd(const Vec& x, bool want_witness) const;
  DepthEvaluation evaluate_table(const Vec& x, bool want_witness) const;
  double refined_sup(const Vec& x, double theta_best, double window,
                     double* theta_out) const;
};

// One-shot conveniences.
DepthEvaluation outlyingness(const Vec& x, const PointCloud& data,
                             const LocationScalePair& pair,
                             const DirectionStrategy& strategy);
DepthEvaluation projection_depth(const Vec& x, const PointCloud& data,
                                 const LocationScalePair& pair,
                                 const DirectionStrategy& strategy);
// Exact planar sweep with the offset-k scale; requires d = 2.
DepthEvaluation sweep_exact_2d(const Vec& x, const PointCloud& data, int k);

namespace detail {
// Candidate angles (in [0, pi)) of the exact planar sweep for one dataset.
std::vector<double> exact2d_candidate_angles(const PointCloud& data);
}  // namespace detail

}  // namespace ptm
