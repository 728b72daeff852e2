#include <doctest.h>

#include <cmath>

#include "gvi/environments.hpp"
#include "gvi/operators.hpp"
#include "gvi/runs.hpp"

using namespace gvi;

namespace {

double total_variation(const Policy& a, const Policy& b, int state) {
    return 0.5 * (a.probs().row(state) - b.probs().row(state)).cwiseAbs().sum();
}

QFunction seeded_q(int num_states, int num_actions, double scale, Rng& rng) {
    QFunction q = QFunction::zeros(num_states, num_actions);
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < num_actions; ++a)
            q.values(s, a) = rng.uniform(-scale, scale);
    return q;
}

}  // namespace

TEST_CASE("lambda rule evaluates the max of its two branches") {
    CHECK(update_lambda_tabular(0.0, 10.0, 2.0, 0.9) == doctest::Approx(9.0));
    CHECK(update_lambda_tabular(3.0, 10.0, 2.0, 0.9) == doctest::Approx(9.0));
    CHECK(update_lambda_tabular(100.0, 1.0, 2.0, 0.9) == doctest::Approx(200.0));
    // tie: both branches equal, the common value comes out
    CHECK(update_lambda_tabular(4.5, 10.0, 2.0, 0.9) == doctest::Approx(9.0));
    CHECK_THROWS_AS(update_lambda_tabular(1.0, 0.0, 2.0, 0.9), GviError);
}

TEST_CASE("error injection fires only on period multiples") {
    ErrorModel model = ErrorModel::periodic(100, 100.0);
    Rng rng(5);
    CHECK(inject_error(model, 50, 3, 2, rng).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd shock = inject_error(model, 100, 3, 2, rng);
    CHECK(shock.minCoeff() >= 0.0);
    CHECK(shock.maxCoeff() <= 100.0);
    CHECK(shock.maxCoeff() > 0.0);
    // broadcast: one scalar everywhere
    CHECK(shock.minCoeff() == shock.maxCoeff());

    ErrorModel per_entry =
        ErrorModel::periodic(100, 100.0, ErrorApplication::per_entry);
    Eigen::MatrixXd table = inject_error(per_entry, 200, 3, 2, rng);
    CHECK(table.minCoeff() >= 0.0);
    CHECK(table.maxCoeff() <= 100.0);
    CHECK(table.minCoeff() != table.maxCoeff());

    ErrorModel none = ErrorModel::none_model();
    for (int k : {1, 7, 100}) {
        CHECK(inject_error(none, k, 3, 2, rng).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("munchausen step on a per-state-constant q yields the uniform policy") {
    Rng rng(3);
    TabularMdp mdp = random_mdp(4, 3, 0.9, rng);
    QFunction q = QFunction::zeros(4, 3);
    q.values.col(0).setConstant(2.0);
    q.values.col(1).setConstant(2.0);
    q.values.col(2).setConstant(2.0);
    auto [pi, next] = munchausen_step(q, 1.5, mdp);
    for (int s = 0; s < 4; ++s)
        for (int a = 0; a < 3; ++a)
            CHECK(pi.probs()(s, a) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(pi.log_probs()(0, 0) == doctest::Approx(-std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("munchausen step decomposes into log-policy reward plus bootstrap") {
    Rng rng(17);
    TabularMdp mdp = random_mdp(4, 3, 0.8, rng);
    QFunction q = seeded_q(4, 3, 2.0, rng);
    const double lambda = 1.0;
    auto [pi, next] = munchausen_step(q, lambda, mdp);
    Eigen::VectorXd inner =
        (pi.probs().array() * (q.values - lambda * pi.log_probs()).array())
            .rowwise()
            .sum();
    Eigen::MatrixXd bootstrap = mdp.gamma() * mdp.apply_transition(inner);
    Eigen::MatrixXd residual =
        next.values - bootstrap - lambda * pi.log_probs() - mdp.reward();
    CHECK(residual.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("two munchausen steps match the explicit iteration after the change of variable") {
    Rng rng(23);
    TabularMdp mdp = random_mdp(3, 3, 0.9, rng);
    const double lambda = 2.0;
    const double log_a = std::log(3.0);

    // implicit side
    QFunction qm = QFunction::zeros(3, 3);
    auto [pi1_m, q1_m] = munchausen_step(qm, lambda, mdp);
    auto [pi2_m, q2_m] = munchausen_step(q1_m, lambda, mdp);

    // explicit side from the matched initial point u_0 = q_0 - lambda ln pi_0
    Policy pi0 = Policy::uniform(3, 3);
    QFunction u{Eigen::MatrixXd::Constant(3, 3, lambda * log_a)};
    Policy pi1_e = regularized_greedy(u, pi0, lambda, 0.0);
    QFunction u1 = regularized_bellman(u, pi1_e, pi0, lambda, 0.0, mdp);
    Policy pi2_e = regularized_greedy(u1, pi1_e, lambda, 0.0);
    QFunction u2 = regularized_bellman(u1, pi2_e, pi1_e, lambda, 0.0, mdp);

    Eigen::MatrixXd u1_m = q1_m.values - lambda * pi1_m.log_probs();
    Eigen::MatrixXd u2_m = q2_m.values - lambda * pi2_m.log_probs();
    CHECK((u1_m - u1.values).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((u2_m - u2.values).cwiseAbs().maxCoeff() <= 1e-8);
    for (int s = 0; s < 3; ++s) {
        CHECK(total_variation(pi1_m, pi1_e, s) <= 1e-10);
        CHECK(total_variation(pi2_m, pi2_e, s) <= 1e-10);
    }
}

TEST_CASE("stable step with equal lambdas is a scaled munchausen step") {
    Rng rng(29);
    TabularMdp mdp = random_mdp(4, 2, 0.85, rng);
    QFunction q_stable = seeded_q(4, 2, 1.5, rng);
    const double lambda = 3.0;
    auto [pi_s, next_s] = gvi_stable_step(q_stable, lambda, lambda, mdp);
    QFunction q_impl{lambda * q_stable.values};
    auto [pi_m, next_m] = munchausen_step(q_impl, lambda, mdp);
    CHECK((next_m.values / lambda - next_s.values).cwiseAbs().maxCoeff() <= 1e-9);
    for (int s = 0; s < 4; ++s) CHECK(total_variation(pi_s, pi_m, s) <= 1e-12);
}

TEST_CASE("stable step on zero q returns the uniform policy") {
    Rng rng(31);
    TabularMdp mdp = random_mdp(3, 4, 0.9, rng);
    auto [pi, next] = gvi_stable_step(QFunction::zeros(3, 4), 1.0, 1.0, mdp);
    for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 4; ++a)
            CHECK(pi.probs()(s, a) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("stable run tracks the explicit run through the change of variable") {
    RunOptions opts;
    opts.record_qs = true;
    opts.record_policies = true;
    ErrorModel model = ErrorModel::periodic(10, 5.0, ErrorApplication::per_entry);
    CoefficientSchedule schedule(2.0, 0.9, 4.0);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Rng rng(seed * 7919 + 1);
        TabularMdp mdp = random_mdp(4, 3, 0.88, rng);
        IterationTrace explicit_trace =
            gvi_explicit_run(mdp, schedule, model, 50, seed, opts);
        IterationTrace stable_trace =
            gvi_stable_run(mdp, schedule, model, 50, seed, opts);
        REQUIRE(stable_trace.transformed_qs.size() == 50);
        for (int k = 0; k < 50; ++k) {
            CHECK(stable_trace.lambdas[k] == explicit_trace.lambdas[k]);
            CHECK((stable_trace.transformed_qs[k].values -
                   explicit_trace.qs[k].values)
                      .cwiseAbs()
                      .maxCoeff() <= 1e-7);
            for (int s = 0; s < 4; ++s)
                CHECK(total_variation(stable_trace.policies[k],
                                      explicit_trace.policies[k], s) <= 1e-8);
        }
    }
}

TEST_CASE("stable steps with a seeded lambda sequence follow the explicit operators") {
    Rng rng(1031);
    TabularMdp mdp = random_mdp(5, 3, 0.9, rng);
    std::vector<double> lambdas(51);
    for (auto& l : lambdas) l = rng.uniform(0.5, 8.0);

    const double log_a = std::log(3.0);
    QFunction q_stable{Eigen::MatrixXd::Constant(5, 3, -log_a)};
    QFunction q_explicit = QFunction::zeros(5, 3);
    Policy pi_explicit = Policy::uniform(5, 3);
    for (int k = 0; k < 50; ++k) {
        auto [pi_s, next_s] =
            gvi_stable_step(q_stable, lambdas[k], lambdas[k + 1], mdp);
        Policy pi_e = regularized_greedy(q_explicit, pi_explicit, lambdas[k], 0.0);
        q_explicit =
            regularized_bellman(q_explicit, pi_e, pi_explicit, lambdas[k], 0.0, mdp);
        pi_explicit = pi_e;
        q_stable = next_s;
        Eigen::MatrixXd transformed =
            lambdas[k + 1] * (q_stable.values - pi_s.log_probs());
        CHECK((transformed - q_explicit.values).cwiseAbs().maxCoeff() <= 1e-7);
    }
}

TEST_CASE("averaged iteration reproduces the explicit policies") {
    RunOptions opts;
    opts.record_policies = true;
    ErrorModel model = ErrorModel::periodic(10, 3.0, ErrorApplication::per_entry);
    CoefficientSchedule schedule(2.0, 0.9, 2.0);
    for (std::uint64_t seed : {4u, 5u}) {
        Rng rng(seed * 104729 + 11);
        TabularMdp mdp = random_mdp(4, 3, 0.9, rng);
        IterationTrace explicit_trace =
            gvi_explicit_run(mdp, schedule, model, 50, seed, opts);
        IterationTrace averaged_trace =
            averaged_iteration_run(mdp, schedule, model, 50, seed, opts);
        for (int k = 0; k < 50; ++k)
            for (int s = 0; s < 4; ++s)
                CHECK(total_variation(averaged_trace.policies[k],
                                      explicit_trace.policies[k], s) <= 1e-8);
    }
}

TEST_CASE("averaged h is the uniform average of iterates under constant lambda") {
    RunOptions opts;
    opts.record_qs = true;
    CoefficientSchedule schedule = CoefficientSchedule::constant(5.0);
    Rng rng(2048);
    TabularMdp mdp = random_mdp(3, 2, 0.9, rng);
    IterationTrace trace = averaged_iteration_run(mdp, schedule,
                                                  ErrorModel::none_model(), 20,
                                                  0, opts);
    // h_{k+1} = (q_0 + q_1 + ... + q_{k+1}) / (k+2) with q_0 = 0
    Eigen::MatrixXd running = Eigen::MatrixXd::Zero(3, 2);
    for (int k = 0; k < 20; ++k) {
        running += trace.qs[k].values;
        Eigen::MatrixXd expected = running / (k + 2.0);
        CHECK((trace.averaged_hs[k].values - expected).cwiseAbs().maxCoeff() <=
              1e-10);
    }
}

TEST_CASE("gvi with alpha1=0, alpha2=1 reproduces mdvi bit for bit") {
    ErrorModel model = ErrorModel::periodic(7, 2.0, ErrorApplication::per_entry);
    Rng rng(55);
    TabularMdp mdp = random_mdp(5, 3, 0.9, rng);
    IterationTrace a = mdvi_run(mdp, 6.0, model, 40, 99);
    IterationTrace b = gvi_explicit_run(mdp, CoefficientSchedule(0.0, 1.0, 6.0),
                                        model, 40, 99);
    REQUIRE(a.size() == b.size());
    for (int k = 0; k < a.size(); ++k) {
        CHECK(a.lambdas[k] == b.lambdas[k]);
        CHECK(a.gaps[k] == b.gaps[k]);
        CHECK(a.q_norms[k] == b.q_norms[k]);
        CHECK(a.backup_norms[k] == b.backup_norms[k]);
        CHECK(a.errors.norms[k] == b.errors.norms[k]);
    }
}

TEST_CASE("gvi with zero errors decays lambda geometrically") {
    Rng rng(60);
    TabularMdp mdp = random_mdp(4, 2, 0.9, rng);
    CoefficientSchedule schedule(2.0, 0.9, 10.0);
    IterationTrace trace =
        gvi_explicit_run(mdp, schedule, ErrorModel::none_model(), 30, 0);
    double expected = 10.0;
    for (int k = 0; k < 30; ++k) {
        CHECK(trace.lambdas[k] == expected);
        expected = std::max(2.0 * 0.0, 0.9 * expected);
    }
}

TEST_CASE("recorded schedules respect the alpha2 floor and gaps are nonnegative") {
    ErrorModel model = ErrorModel::periodic(5, 10.0, ErrorApplication::per_entry);
    Rng rng(61);
    TabularMdp mdp = random_mdp(5, 3, 0.9, rng);
    CoefficientSchedule schedule(2.0, 0.8, 3.0);
    IterationTrace trace = gvi_explicit_run(mdp, schedule, model, 60, 123);
    for (int k = 1; k < trace.size(); ++k)
        CHECK(trace.lambdas[k] >= 0.8 * trace.lambdas[k - 1] - 1e-15);
    for (double gap : trace.gaps) CHECK(gap >= -1e-10);
}

TEST_CASE("geometric interpolation endpoints and closed form") {
    Rng rng(71);
    Policy prev = Policy::uniform(3, 3);
    QFunction q = seeded_q(3, 3, 2.0, rng);
    const double lambda = 1.0, lambda_k = 4.0;
    Policy target = regularized_greedy(q, prev, lambda, 0.0);

    Policy same = geometric_interpolation(prev, target, 1.0);
    CHECK((same.probs() - target.probs()).cwiseAbs().maxCoeff() == 0.0);

    // zeta = lambda / lambda_k reproduces the lambda_k-greedy
    Policy mixed = geometric_interpolation(prev, target, lambda / lambda_k);
    Policy direct = regularized_greedy(q, prev, lambda_k, 0.0);
    CHECK((mixed.probs() - direct.probs()).cwiseAbs().maxCoeff() <= 1e-9);

    Policy fixed = geometric_interpolation(target, target, 0.37);
    CHECK((fixed.probs() - target.probs()).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(geometric_interpolation(prev, target, 0.0), GviError);
    Policy det = Policy::deterministic(3, 3, {0, 1, 2});
    CHECK_THROWS_AS(geometric_interpolation(det, prev, 0.5),
                    AbsoluteContinuityViolation);
}

TEST_CASE("mdvi without errors converges on the maze") {
    MazeSpec spec;
    spec.rng_seed = 3;
    Maze maze = generate_maze(spec);
    IterationTrace trace =
        mdvi_run(maze.mdp, 50.0, ErrorModel::none_model(), 2000, 0);
    CHECK(trace.gaps.back() < 1e-3);
    // trend check: averaged gap over the last 100 iterations is below the
    // average over iterations 100..200
    double early = 0.0, late = 0.0;
    for (int k = 100; k < 200; ++k) early += trace.gaps[k];
    for (int k = 1900; k < 2000; ++k) late += trace.gaps[k];
    CHECK(late < early);
}
