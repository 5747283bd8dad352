// SPDX-License-Identifier: Apache-2.0
//
// ic-igs: rate regions of the two-user SISO interference channel with
// additive asymmetric hardware distortion under improper Gaussian signaling.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ICIGS_REGION_HPP
#define ICIGS_REGION_HPP

#include "icigs/s_igs.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace icigs
{
    enum class Method
    {
        pgs,
        s_igs,
        fp_igs,
        oracle
    };

    /// "PGS", "S-IGS", "FP-IGS", "ORACLE".
    std::string to_string(Method m);
    /// Inverse of to_string, case-insensitive. Throws std::invalid_argument.
    Method method_from_string(const std::string &name);

    /// Exhaustive search resolution. Powers take n_power values per axis; for
    /// each power pair, q_k = kappa p_k e^{i theta} is searched one user at a
    /// time over n_kappa x n_theta values, repeated for `passes` sweeps.
    /// zoom_levels > 0 adds a pattern search over the 3^6 neighbourhood of each
    /// of the best grid points, halving the step at each level, followed by a
    /// steepest-ascent polish of the min of the two user terms. joint replaces
    /// the per-user passes by the full product over (kappa1, theta1, kappa2, theta2).
    struct OracleGrid
    {
        int n_power = 41;
        int n_kappa = 11;
        int n_theta = 16;
        int passes = 3;
        int zoom_levels = 0;
        int refine_starts = 8; // best grid cells refined by the pattern search
        bool joint = false;
    };

    struct MethodSettings
    {
        FpSettings fp;
        DcpSettings dcp;
        double bisection_tol = 1e-10;
        OracleGrid grid;
    };

    struct RegionPoint
    {
        ProfileWeights weights;
        TxSignal signal;
        Vec2 rates = Vec2::Zero();
        Vec2 psinrs = Vec2::Ones();
        Method method = Method::pgs;
        bool kernel_limit_hit = false;

        double symmetric_rate() const { return rates.minCoeff(); }
    };

    struct RegionBoundary
    {
        std::vector<RegionPoint> points; // sorted by R1
        std::vector<Vec2> hull;          // time-sharing hull, from (0, R2max) to (R1max, 0)
        std::vector<std::pair<ProfileWeights, std::string>> failures;
    };

    /// Runs one method at one weight vector and evaluates the resulting point.
    RegionPoint solve_point(const ScenarioConfig &cfg, const LinkVectors &vecs, Method method,
                            const ProfileWeights &w, const MethodSettings &settings = {});

    /// alpha_1 = i / (n_points - 1), i = 0 .. n_points - 1.
    RegionBoundary sweep_boundary(const ScenarioConfig &cfg, Method method, int n_points,
                                  const MethodSettings &settings = {});

    /// Upper-right convex hull of rate pairs together with their projections on
    /// both axes and the origin.
    std::vector<Vec2> time_sharing_hull(const std::vector<Vec2> &points);
    RegionBoundary time_sharing_hull(RegionBoundary boundary);

    /// Whether pt lies in the region bounded by the axes and the hull chain.
    bool hull_contains(const std::vector<Vec2> &hull, const Vec2 &pt, double tol = 1e-12);

    /// min(R1, R2) at alpha = (1/2, 1/2).
    double symmetric_rate(const ScenarioConfig &cfg, Method method, const MethodSettings &settings = {});

    /// Exhaustive search for max min_k (E_k - 1) / alpha_k. Every evaluated
    /// point is feasible, so the result is a lower bound on the true optimum.
    RegionPoint grid_oracle(const ScenarioConfig &cfg, const ProfileWeights &w, const OracleGrid &grid = {});

    enum class SweepVariable
    {
        snr_db,
        hwd_variance,
        circularity
    };

    std::string to_string(SweepVariable v);
    SweepVariable sweep_variable_from_string(const std::string &name);

    /// Averaging experiment over random channels. The swept variable overrides
    /// the matching base value; distortion is the same on every link with a
    /// real complementary variance circularity * hwd_variance.
    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::snr_db;
        std::vector<double> values;
        double noise_power = 1.0;
        double snr_db = 0.0;
        double hwd_variance = 0.0;
        double circularity = 0.0;
    };

    struct SweepCell
    {
        double value = 0.0;
        Method method = Method::pgs;
        double mean = 0.0;
        double stderr_of_mean = 0.0;
        int samples = 0;
        int failures = 0;
        int kernel_limit_hits = 0;
    };

    /// Channel realization `index` of the stream `seed`: i.i.d. CN(0, 1) entries,
    /// each drawn as two normals of variance 1/2 (real part first), row-major
    /// over (j, k), from std::mt19937_64 seeded with seed_seq{seed lo, seed hi, index}.
    Eigen::Matrix2cd random_channels(std::uint64_t seed, std::uint64_t index);

    ScenarioConfig sweep_scenario(const SweepSpec &spec, double value, const Eigen::Matrix2cd &channels);

    /// Mean and standard error of the symmetric rate per (value, method), using
    /// the same channel realizations in every cell. Output ordering is
    /// value-major, then method in the given order, independent of threads.
    std::vector<SweepCell> monte_carlo(const std::vector<Method> &methods, const SweepSpec &sweep,
                                       int n_realizations, std::uint64_t seed, const MethodSettings &settings = {},
                                       int threads = 1);

    /// Runs f(i) for i in [0, n) on up to `threads` workers.
    void parallel_for(int n, int threads, const std::function<void(int)> &f);

} // namespace icigs

#endif
