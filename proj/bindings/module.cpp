// Python bindings: thin wrappers over the C++ core. Matrices map to numpy
// arrays via pybind11's Eigen support; reports come back as plain dicts.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptm/competitors.hpp"
#include "ptm/depth.hpp"
#include "ptm/io.hpp"
#include "ptm/regions.hpp"
#include "ptm/simulate.hpp"
#include "ptm/theory.hpp"
#include "ptm/trim.hpp"

namespace py = pybind11;
using namespace ptm;

namespace {

PointCloud cloud(const Mat& pts) {
  PointCloud data{pts};
  data.validate();
  return data;
}

LocationScalePair pair_from(const std::string& name, int k, int d) {
  if (name == "meansd") return LocationScalePair::meansd();
  if (name != "medmad")
    throw Error("bad_argument", "pair must be 'medmad' or 'meansd'",
                {{"pair", name}});
  return k > 0 ? LocationScalePair::medmad(k)
               : LocationScalePair::medmad_default(d);
}

DirectionStrategy strategy_from(const std::string& name, int n, int d,
                                const LocationScalePair& pair,
                                std::uint64_t seed) {
  if (name == "auto") return DirectionStrategy::auto_for(n, d, pair, seed);
  if (name == "exact2d") return DirectionStrategy::exact2d();
  if (name == "sphere") return DirectionStrategy::random_sphere(300, seed);
  if (name == "data") return DirectionStrategy::data_driven(500, seed);
  if (name == "hybrid") return DirectionStrategy::hybrid(500, 300, seed);
  throw Error("bad_argument",
              "strategy must be auto, exact2d, sphere, data or hybrid",
              {{"strategy", name}});
}

WeightSpec weight_from(const std::string& name, double power) {
  if (name == "constant") return WeightSpec::constant_one();
  if (name == "power") return WeightSpec::power(power);
  throw Error("bad_argument", "weight must be 'constant' or 'power'",
              {{"weight", name}});
}

}  // namespace

PYBIND11_MODULE(_ptmcore, m) {
  m.doc() = "projection-depth trimming core";

  py::register_exception<Error>(m, "PtmError");

  m.def(
      "med_k",
      [](std::vector<double> xs, int k) { return med_k(xs, k); },
      py::arg("xs"), py::arg("k") = 1,
      "k-th generalized sample median of a 1-D sequence");

  m.def(
      "mad_k",
      [](std::vector<double> xs, int k) { return mad_k(xs, k); },
      py::arg("xs"), py::arg("k") = 1,
      "k-th generalized median absolute deviation");

  m.def(
      "outlyingness",
      [](const Mat& pts, const Vec& x, const std::string& pair,
         const std::string& strategy, int k, std::uint64_t seed) {
        const PointCloud data = cloud(pts);
        const LocationScalePair p = pair_from(pair, k, data.dim());
        const DepthEvaluator ev(
            data, p, strategy_from(strategy, data.n(), data.dim(), p, seed));
        return ev.outlyingness(x);
      },
      py::arg("points"), py::arg("x"), py::arg("pair") = "medmad",
      py::arg("strategy") = "auto", py::arg("k") = 0, py::arg("seed") = 0,
      "supremal projected deviation of x from the sample");

  m.def(
      "depth",
      [](const Mat& pts, const Vec& x, const std::string& pair,
         const std::string& strategy, int k, std::uint64_t seed) {
        const PointCloud data = cloud(pts);
        const LocationScalePair p = pair_from(pair, k, data.dim());
        const DepthEvaluator ev(
            data, p, strategy_from(strategy, data.n(), data.dim(), p, seed));
        return ev.depth(x);
      },
      py::arg("points"), py::arg("x"), py::arg("pair") = "medmad",
      py::arg("strategy") = "auto", py::arg("k") = 0, py::arg("seed") = 0,
      "projection depth of x with respect to the sample");

  m.def(
      "ptm",
      [](const Mat& pts, double alpha, const std::string& pair,
         const std::string& strategy, const std::string& weight, double power,
         int k, std::uint64_t seed) {
        const PointCloud data = cloud(pts);
        const LocationScalePair p = pair_from(pair, k, data.dim());
        const DepthEvaluator ev(
            data, p, strategy_from(strategy, data.n(), data.dim(), p, seed));
        TrimSpec spec;
        spec.alpha = alpha;
        spec.weight = weight_from(weight, power);
        const PtmResult r = ptm::ptm(ev, spec);
        return py::dict(py::arg("estimate") = Vec(r.estimate),
                        py::arg("kept") = r.kept,
                        py::arg("weight_sum") = r.weight_sum,
                        py::arg("max_point_depth") = r.max_point_depth,
                        py::arg("method") = r.method);
      },
      py::arg("points"), py::arg("alpha") = 0.1, py::arg("pair") = "medmad",
      py::arg("strategy") = "auto", py::arg("weight") = "constant",
      py::arg("power") = 1.0, py::arg("k") = 0, py::arg("seed") = 0,
      "depth-trimmed weighted mean");

  m.def(
      "alpha_d",
      [](const Mat& pts, int grid, std::uint64_t seed) {
        const AlphaDReport r = alpha_d(cloud(pts), grid, seed);
        return py::dict(py::arg("alpha_d") = r.alpha_d,
                        py::arg("ratio") = r.ratio, py::arg("exact") = r.exact);
      },
      py::arg("points"), py::arg("grid") = 4096, py::arg("seed") = 0,
      "largest trimming level that survives worst-case point replacement");

  m.def(
      "breakdown_point",
      [](int n, int d, int k) {
        const Rational r = breakdown_point(n, d, k);
        return py::make_tuple(r.num, r.den);
      },
      py::arg("n"), py::arg("d"), py::arg("k"),
      "finite-sample replacement breakdown point as a (num, den) pair");

  m.def(
      "projection_median",
      [](const Mat& pts, const std::string& pair, const std::string& strategy,
         int k, std::uint64_t seed) {
        const PointCloud data = cloud(pts);
        const LocationScalePair p = pair_from(pair, k, data.dim());
        const CenterEstimate c = projection_median(
            data, p, strategy_from(strategy, data.n(), data.dim(), p, seed));
        return py::dict(py::arg("center") = Vec(c.center),
                        py::arg("depth") = c.depth,
                        py::arg("outlyingness") = c.outlyingness,
                        py::arg("converged") = c.converged);
      },
      py::arg("points"), py::arg("pair") = "medmad",
      py::arg("strategy") = "auto", py::arg("k") = 0, py::arg("seed") = 0,
      "deepest point of the sample");

  m.def(
      "radius_profile",
      [](const Mat& pts, double alpha, int angles, const std::string& pair,
         const std::string& strategy, int k, std::uint64_t seed) {
        const PointCloud data = cloud(pts);
        const LocationScalePair p = pair_from(pair, k, data.dim());
        const DepthEvaluator ev(
            data, p, strategy_from(strategy, data.n(), data.dim(), p, seed));
        const CenterEstimate c = projection_median(ev);
        const RadiusProfile rp =
            radius_profile(ev, c.center, alpha, angles, seed);
        Mat dirs(static_cast<Eigen::Index>(rp.directions.size()), data.dim());
        Vec radii(static_cast<Eigen::Index>(rp.radii.size()));
        for (size_t i = 0; i < rp.directions.size(); ++i) {
          dirs.row(static_cast<Eigen::Index>(i)) = rp.directions[i].transpose();
          radii[static_cast<Eigen::Index>(i)] = rp.radii[i];
        }
        return py::dict(py::arg("center") = Vec(c.center),
                        py::arg("directions") = dirs,
                        py::arg("radii") = radii);
      },
      py::arg("points"), py::arg("alpha"), py::arg("angles") = 256,
      py::arg("pair") = "medmad", py::arg("strategy") = "auto",
      py::arg("k") = 0, py::arg("seed") = 0,
      "directional radii of the depth-alpha region about the deepest point");

  m.def(
      "if_radius",
      [](const Vec& x, const Vec& u, double alpha, const std::string& pair) {
        return if_radius(x, u, alpha, EllipticalModel::standard(x.size()),
                         pair_from(pair, 0, static_cast<int>(x.size())));
      },
      py::arg("x"), py::arg("u"), py::arg("alpha"), py::arg("pair") = "medmad",
      "influence function of a directional radius at the standard normal");

  m.def(
      "if_ptm",
      [](const Vec& x, double alpha, const std::string& pair,
         const std::string& weight, double power, int nodes, long long draws,
         std::uint64_t seed) {
        IfPtmOptions opts;
        opts.nodes = nodes;
        opts.draws = draws;
        opts.seed = seed;
        return if_ptm(x, alpha, EllipticalModel::standard(x.size()),
                      weight_from(weight, power),
                      pair_from(pair, 0, static_cast<int>(x.size())), opts);
      },
      py::arg("x"), py::arg("alpha"), py::arg("pair") = "medmad",
      py::arg("weight") = "constant", py::arg("power") = 1.0,
      py::arg("nodes") = 1024, py::arg("draws") = 200000,
      py::arg("seed") = 2026,
      "influence function of the trimmed mean at the standard normal");

  m.def(
      "are_vs_mean",
      [](double alpha, int d, long long draws, int nodes, std::uint64_t seed) {
        AsyOptions opts;
        opts.draws = draws;
        opts.nodes = nodes;
        opts.seed = seed;
        return are_vs_mean(alpha, d, opts);
      },
      py::arg("alpha"), py::arg("d") = 2, py::arg("draws") = 2000000,
      py::arg("nodes") = 2048, py::arg("seed") = 17,
      "asymptotic efficiency of the trimmed mean relative to the mean");

  m.def(
      "halfspace_depth",
      [](const Vec& x, const Mat& pts) {
        const Rational r = halfspace_depth(x, cloud(pts));
        return py::make_tuple(r.num, r.den);
      },
      py::arg("x"), py::arg("points"),
      "halfspace depth of x as a (num, den) pair");

  m.def(
      "stahel_donoho",
      [](const Mat& pts, const std::string& pair, const std::string& strategy,
         int k, std::uint64_t seed) {
        const PointCloud data = cloud(pts);
        const LocationScalePair p = pair_from(pair, k, data.dim());
        return stahel_donoho(
            data, strategy_from(strategy, data.n(), data.dim(), p, seed));
      },
      py::arg("points"), py::arg("pair") = "medmad",
      py::arg("strategy") = "auto", py::arg("k") = 0, py::arg("seed") = 0,
      "outlyingness-weighted mean");

  m.def(
      "sample",
      [](double eps, double mu, double sd, int d, int n, std::uint64_t seed) {
        const ModelSpec model = eps > 0.0
                                    ? ModelSpec::contaminated(eps, mu, sd, d)
                                    : ModelSpec::standard_normal(d);
        return sample(model, n, seed).pts;
      },
      py::arg("eps") = 0.0, py::arg("mu") = 10.0, py::arg("sd") = 5.0,
      py::arg("d") = 2, py::arg("n") = 100, py::arg("seed") = 2026,
      "draw a (possibly contaminated) normal sample with fixed-count mixing");

  m.def(
      "run_study",
      [](double eps, const std::vector<int>& n_list, int m, double alpha,
         std::uint64_t seed, int threads) {
        StudyConfig config;
        config.model = eps > 0.0 ? ModelSpec::contaminated(eps, 10.0, 5.0, 2)
                                 : ModelSpec::standard_normal(2);
        config.n_list = n_list;
        config.m = m;
        config.seed = seed;
        config.threads = threads;
        EstimatorConfig mean;
        mean.kind = EstimatorKind::Mean;
        EstimatorConfig trimmed;
        trimmed.kind = EstimatorKind::Ptm;
        trimmed.alpha = alpha;
        config.estimators = {mean, trimmed};
        const EmseReport report = run_study(config);
        return py::module_::import("json").attr("loads")(
            io::to_json(report).dump());
      },
      py::arg("eps") = 0.0, py::arg("n_list") = std::vector<int>{100},
      py::arg("m") = 100, py::arg("alpha") = 0.1, py::arg("seed") = 2026,
      py::arg("threads") = 0,
      "mean-vs-trimmed-mean efficiency study; returns the report as a dict");
}
