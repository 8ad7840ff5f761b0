#pragma once

#include "perigeo/cluster.hpp"
#include "perigeo/isoset.hpp"

#include <string>
#include <vector>

namespace perigeo {

using PointList = std::vector<Vec>;

/// max over p in C of the distance from p to D.
double directed_hausdorff(const PointList& c, const PointList& d);

struct RotationFit {
    double value = 0;
    OrthogonalMap map;
    /// False when the 2D search stopped on its interval budget.
    bool certified = true;
};

struct ExactOptions {
    double grid_step_2d = 0.05;   // initial angle intervals (radians)
    double precision_2d = 1e-10;  // 2D result within precision * max|c| of the optimum
    long max_intervals = 5000000;
    double grid_step_3d = 0.1;    // radians per Euler angle
    int refine_starts = 8;        // best 3D grid/anchor maps refined locally
};

/// min over orthogonal f of d_H(f(C), D). n=1 tries both maps; n=2 runs a
/// branch and bound over the angle with exact arc bounds; n=3 aligns anchor
/// pairs, scans an Euler-angle grid and polishes the best maps locally.
RotationFit d_R_exact_small(const PointList& c, const PointList& d, const ExactOptions& opt = {});

/// Anchor-chain approximation: a feasible value within a factor
/// 2(n-1)(1+delta) of the minimum. `thorough` also tries every tied
/// farthest anchor.
RotationFit d_R_approx(const PointList& c, const PointList& d, double delta = 0.1, bool thorough = false);

enum class DrEngine { Auto, Exact, Approx };

struct DrConfig {
    DrEngine engine = DrEngine::Auto;
    double delta = 0.1;
    ExactOptions exact;
    bool thorough = false;
    int exact_limit = 60;  // Auto picks the exact engine up to this cluster size
};

/// Engine used for clusters of these sizes.
DrEngine resolve_engine(const DrConfig& cfg, int size_c, int size_d);
std::string engine_name(DrEngine e);
/// Guaranteed ratio between reported and true d_R for the engine.
double engine_factor(DrEngine e, int dim, double delta);

struct DmResult {
    double value = 0;
    DrEngine engine = DrEngine::Exact;
    /// d_R over growing prefixes came out non-decreasing (within 1e-9).
    bool prefix_monotone = true;
    int prefixes_evaluated = 0;
};

/// Boundary-tolerant one-sided distance
/// max_i min{alpha - |p_i|, d_R({p_1..p_i}, D)} over C sorted by length.
DmResult d_M(const Cluster& c, const Cluster& d, double alpha, const DrConfig& cfg = {});

struct DcResult {
    double value = 0;
    DrEngine engine = DrEngine::Exact;
    double factor_bound = 1;
    DmResult forward;   // d_M(C, D)
    DmResult backward;  // d_M(D, C)
};

/// max{d_M(C,D), d_M(D,C)}. Throws Error when alpha is below the radius
/// of either cluster.
DcResult d_C(const Cluster& c, const Cluster& d, double alpha, const DrConfig& cfg = {});

struct TransportPlan {
    Eigen::MatrixXd flows;  // f_ij as fractions of the total mass
    double cost = 0;
    std::vector<double> row;  // supplied marginals w_i
    std::vector<double> col;  // demanded marginals v_j
};

/// Optimal transport between integer masses (equal totals) by successive
/// shortest augmenting paths with potentials. Flows are reported divided by
/// the total.
TransportPlan transport(const std::vector<long>& supply, const std::vector<long>& demand,
                        const Eigen::MatrixXd& cost);

struct EmdResult {
    double cost = 0;
    TransportPlan plan;
    Eigen::MatrixXd ground;  // d_C between classes
    DrEngine engine = DrEngine::Exact;
    double factor_bound = 1;
};

/// Earth mover's distance between two isosets at the same alpha with d_C
/// as ground distance.
EmdResult emd(const Isoset& a, const Isoset& b, const DrConfig& cfg = {});

/// Bottleneck distance between two sets sharing a unit cell and motif size:
/// the least t admitting a bijection of the motifs moving no point more
/// than t modulo the lattice.
double bottleneck_distance_common_cell(const PeriodicSet& s, const PeriodicSet& q, const Tolerances& tol = {});

}  // namespace perigeo
