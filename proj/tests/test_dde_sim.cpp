#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gspec/bounds.hpp"
#include "gspec/dde_sim.hpp"
#include "gspec/graph.hpp"
#include "gspec/grounding.hpp"
#include "gspec/numerics.hpp"
#include "test_support.hpp"

using namespace gspec;

namespace {

GroundedSystem ground_at(const Graph& g, const std::vector<int>& leaders) {
    return ground(g, leaders).second;
}

} // namespace

TEST_CASE("equilibrium solves the fixed point") {
    GroundedSystem p3 = ground_at(path_graph(3), {0});
    Eigen::VectorXd xs(1);
    xs << 1.0;
    CHECK(equilibrium(p3, xs).isApprox(Eigen::Vector2d::Ones(), 1e-12));

    GroundedSystem p4 = ground_at(path_graph(4), {0, 3});
    Eigen::VectorXd ends(2);
    ends << 0.0, 1.0;
    Eigen::VectorXd mid = equilibrium(p4, ends);
    CHECK(mid(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(mid(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    Eigen::VectorXd same(2);
    same << 0.7, 0.7;
    Eigen::VectorXd flat = equilibrium(p4, same);
    CHECK(flat.isApproxToConstant(0.7, 1e-12));

    CHECK_THROWS_AS(equilibrium(p3, Eigen::VectorXd::Ones(3)), graph_error);
}

TEST_CASE("equilibrium stays inside the leader hull") {
    testing::Corpus corpus(19);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = corpus.connected_graph(3, 12);
        auto leaders = corpus.random_leader_set(g.n);
        auto [p, gs] = ground(g, leaders);
        Eigen::VectorXd xs(p.leaders.size());
        for (int i = 0; i < xs.size(); ++i) xs(i) = 2.0 * corpus.uniform() - 1.0;
        Eigen::VectorXd star = equilibrium(gs, xs);
        CHECK(star.minCoeff() >= xs.minCoeff() - 1e-9);
        CHECK(star.maxCoeff() <= xs.maxCoeff() + 1e-9);
        // fixed-point residual
        CHECK((gs.grounded_laplacian * star + gs.coupling * xs).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("undelayed simulation converges at the analytic rate") {
    GroundedSystem gs = ground_at(path_graph(3), {0});
    SymmetricMatrix lg(gs.grounded_laplacian);
    const double lambda1 = smallest_eigenpair(lg).value;

    SimConfig cfg;
    cfg.dt = 0.01;
    cfg.horizon = 20.0 / lambda1;
    cfg.leader_states = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd x0(2);
    x0 << -1.0, 2.0;
    cfg.initial_followers = x0;
    cfg.record_stride = 1;

    Trajectory traj = simulate(gs, cfg);
    CHECK(traj.classification == SimClass::converged);
    CHECK(traj.terminal_error <= 1e-6 * traj.initial_error);

    // log-error slope over the second half approximates -lambda_1
    const Eigen::VectorXd star = traj.equilibrium;
    const std::size_t half = traj.time.size() / 2;
    const std::size_t end = traj.time.size() - 1;
    const double e_half = (traj.states.row(half).transpose() - star).norm();
    const double e_end = (traj.states.row(end).transpose() - star).norm();
    const double slope = (std::log(e_end) - std::log(e_half)) / (traj.time[end] - traj.time[half]);
    CHECK(slope == doctest::Approx(-lambda1).epsilon(0.1));
}

TEST_CASE("error decays monotonically after the transient") {
    GroundedSystem gs = ground_at(complete_graph(4), {0});
    SimConfig cfg;
    cfg.dt = 0.005;
    cfg.horizon = 30.0;
    cfg.leader_states = Eigen::VectorXd::Constant(1, 0.5);
    cfg.initial_followers = Eigen::Vector3d(2.0, -1.0, 0.25);
    Trajectory traj = simulate(gs, cfg);
    CHECK(traj.classification == SimClass::converged);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = traj.time.size() / 10; k < traj.time.size(); ++k) {
        const double err = (traj.states.row(k).transpose() - traj.equilibrium).norm();
        CHECK(err <= prev + 1e-12);
        prev = err;
    }
}

TEST_CASE("delay pushes the path system across its threshold") {
    // grounding P3 at the middle gives L_g = I, threshold pi/2
    GroundedSystem gs = ground_at(path_graph(3), {1});
    const double tau_hat = std::numbers::pi / 2;

    auto run_at = [&](double tau) {
        SimConfig cfg;
        const int lag = 200;
        cfg.tau = tau;
        cfg.dt = tau / lag;
        cfg.horizon = 400.0;
        cfg.leader_states = Eigen::VectorXd::Ones(1);
        cfg.initial_followers = Eigen::Vector2d(0.3, -0.4);
        cfg.record_stride = 0;
        return simulate(gs, cfg).classification;
    };

    CHECK(run_at(0.9 * tau_hat) == SimClass::converged);
    CHECK(run_at(1.1 * tau_hat) == SimClass::diverged);
}

TEST_CASE("constant disturbance shifts the settled state") {
    GroundedSystem gs = ground_at(path_graph(3), {0});
    SimConfig cfg;
    cfg.dt = 0.01;
    cfg.horizon = 80.0;
    cfg.leader_states = Eigen::VectorXd::Ones(1);
    cfg.disturbance = DisturbanceKind::constant;
    cfg.constant_disturbance = Eigen::Vector2d(0.5, 0.0);
    Trajectory traj = simulate(gs, cfg);

    // settles at the fixed point of L_g x = -L_12 x_S + w, not the nominal one
    Eigen::LLT<Eigen::MatrixXd> llt(gs.grounded_laplacian);
    Eigen::VectorXd shifted =
        llt.solve((-gs.coupling * cfg.leader_states + cfg.constant_disturbance).eval());
    Eigen::VectorXd last = traj.states.row(traj.states.rows() - 1).transpose();
    CHECK((last - shifted).norm() < 1e-6);
    CHECK((last - traj.equilibrium).norm() > 0.1);
}

TEST_CASE("simulation config validation") {
    GroundedSystem gs = ground_at(path_graph(3), {1});
    SimConfig cfg;
    cfg.dt = 0.01;
    cfg.horizon = 10.0;
    cfg.leader_states = Eigen::VectorXd::Ones(1);

    SimConfig bad = cfg;
    bad.tau = 0.0151;   // not an integer multiple of dt
    CHECK_THROWS_AS(simulate(gs, bad), graph_error);

    SimConfig short_horizon = cfg;
    short_horizon.tau = 2.0;
    short_horizon.dt = 0.01;
    short_horizon.horizon = 5.0;
    CHECK_THROWS_AS(simulate(gs, short_horizon), graph_error);

    SimConfig zero_dt = cfg;
    zero_dt.dt = 0.0;
    CHECK_THROWS_AS(simulate(gs, zero_dt), graph_error);
}

TEST_CASE("bracketing the scalar threshold") {
    // star grounded at the center: L_g = I_2, boundary pi/2
    GroundedSystem gs = ground_at(star_graph(2), {0});
    BracketResult b = bracket_threshold(gs, 0.02);
    CHECK_FALSE(b.inconclusive);
    CHECK(b.tau_lo < b.tau_hi);
    CHECK(b.analytic == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
    CHECK(std::abs(b.midpoint - b.analytic) <= 0.02 * b.analytic);
    CHECK(b.tau_hi - b.tau_lo <= 0.02 * b.midpoint * 1.0001);
}

TEST_CASE("white-noise energy matches the trace formula") {
    // single follower: variance 1/2
    Graph k2 = build_graph(2, std::vector<std::pair<int, int>>{{0, 1}});
    GroundedSystem scalar = ground_at(k2, {1});
    const double var1 = disturbance_energy_check(scalar, 40, 1.0, 400.0, 5);
    CHECK(var1 == doctest::Approx(0.5).epsilon(0.1));

    // diag(1,2): independent modes, total 3/4
    Graph twolevel = build_graph(
        4, std::vector<std::pair<int, int>>{{0, 2}, {1, 2}, {1, 3}, {2, 3}});
    GroundedSystem diag = ground_at(twolevel, {2, 3});
    Eigen::MatrixXd expected = Eigen::Vector2d(1, 2).asDiagonal();
    REQUIRE(diag.grounded_laplacian.isApprox(expected));
    const double var2 = disturbance_energy_check(diag, 40, 1.0, 400.0, 6);
    CHECK(var2 == doctest::Approx(0.75).epsilon(0.1));
}
