#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "demo_gen.hpp"
#include "formats.hpp"
#include "tasks.hpp"

namespace {

using namespace eda;
using namespace eda::tools;

std::string dataPath(const char* name)
{
    return std::string(EDA_DATA_DIR) + "/" + name;
}

Vec3 toVec3(const std::vector<double>& v)
{
    return Vec3(v[0], v[1], v[2]);
}

double elapsedSince(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Tracking error and peak normal force, recomputable from the trace CSV.
void traceSummary(const Trace& trace, double& finalError, double& peakFn)
{
    finalError = (trace.p.back() - trace.x0.back()).norm();
    peakFn = 0.0;
    for (const double f : trace.fn) peakFn = std::max(peakFn, f);
}

void addCommonOptions(CLI::App* cmd, CommonParams& common, std::string& outPath)
{
    cmd->add_option("--robot", common.robotPath, "robot description file");
    cmd->add_option("--out", outPath, "trace CSV output path");
    cmd->add_option("--dt", common.dt, "simulation step (s)");
    cmd->add_option("--record-every", common.recordEvery, "record every k-th step");
    cmd->add_option("--preroll", common.preRollDuration,
                    "regulation seconds before t = 0 (excluded from the trace)");
    cmd->add_option("--bq", common.bq, "joint damping gain (N m s/rad)");
    cmd->add_option("--kr", common.kr, "rotational stiffness (N m/rad)");
    cmd->add_option("--br", common.br, "rotational damping (N m s/rad)");
    std::map<std::string, Integrator> integrators{{"euler", Integrator::SemiImplicitEuler},
                                                  {"rk4", Integrator::Rk4}};
    cmd->add_option("--integrator", common.integrator, "euler|rk4")
        ->transform(CLI::CheckedTransformer(integrators, CLI::ignore_case));
}

int mainImpl(int argc, char** argv)
{
    CLI::App app{"Elementary Dynamic Actions: motion primitives, impedance control,\n"
                 "and DMP imitation learning on a simulated 7-DOF arm"};
    app.require_subcommand(1);
    app.set_config("--config")->description("key=value config file, overridable by flags");

    // ---- task ----------------------------------------------------------
    auto* task = app.add_subcommand("task", "run one of the demo tasks");
    task->require_subcommand(1);

    SequenceParams seq;
    seq.common.robotPath = dataPath("iiwa14.robot");
    std::string seqOut = "sequence_trace.csv";
    std::vector<double> seqP1{seq.p1.x(), seq.p1.y(), seq.p1.z()};
    std::vector<double> seqP2{seq.p2.x(), seq.p2.y(), seq.p2.z()};
    std::vector<double> seqP3{seq.p3.x(), seq.p3.y(), seq.p3.z()};
    auto* sequence = task->add_subcommand("sequence", "two superimposed submovements");
    addCommonOptions(sequence, seq.common, seqOut);
    sequence->add_option("--p1", seqP1, "start point (m)")->expected(3);
    sequence->add_option("--p2", seqP2, "first goal (m)")->expected(3);
    sequence->add_option("--p3", seqP3, "second goal (m)")->expected(3);
    sequence->add_option("--t1", seq.T1, "first submovement duration (s)");
    sequence->add_option("--t2", seq.T2, "second submovement duration (s)");
    sequence->add_option("--ti", seq.ti, "first submovement start (s)");
    sequence->add_option("--tg", seq.tg, "second submovement start (s)");
    sequence->add_option("--kp", seq.kp, "translational stiffness (N/m)");
    sequence->add_option("--bp", seq.bp, "translational damping (N s/m)");
    sequence->add_option("--duration", seq.duration, "simulated seconds");
    sequence->add_flag("--no-second", "drop the second submovement");

    CombineParams comb;
    comb.common.robotPath = dataPath("iiwa14.robot");
    std::string combOut = "combine_trace.csv";
    std::vector<double> combP1{comb.p1.x(), comb.p1.y(), comb.p1.z()};
    std::vector<double> combP2{comb.p2.x(), comb.p2.y(), comb.p2.z()};
    auto* combine = task->add_subcommand("combine", "submovement plus oscillation");
    addCommonOptions(combine, comb.common, combOut);
    combine->add_option("--p1", combP1, "start point (m)")->expected(3);
    combine->add_option("--p2", combP2, "goal point (m)")->expected(3);
    combine->add_option("--t1", comb.T1, "submovement duration (s)");
    combine->add_option("--ti", comb.ti, "submovement start (s)");
    combine->add_option("--radius", comb.radius, "oscillation radius (m)");
    combine->add_option("--omega", comb.omega, "oscillation angular velocity (rad/s)");
    combine->add_option("--phase", comb.phase, "oscillation phase (rad)");
    combine->add_option("--kp", comb.kp, "translational stiffness (N/m)");
    combine->add_option("--bp", comb.bp, "translational damping (N s/m)");
    combine->add_option("--duration", comb.duration, "simulated seconds");

    DrawEraseParams de;
    de.common.robotPath = dataPath("iiwa14.robot");
    de.demoPath = dataPath("demo_letter.csv");
    std::string deOut = "drawerase_trace.csv";
    double dePlaneZ = -1.0;
    auto* drawerase = task->add_subcommand("drawerase", "draw a learned path, then erase it");
    addCommonOptions(drawerase, de.common, deOut);
    drawerase->add_option("--demo", de.demoPath, "demonstration CSV (t,x,y)");
    drawerase->add_option("--n", de.nBasis, "number of forcing basis functions");
    drawerase->add_option("--alpha-s", de.alphaS, "canonical decay rate");
    drawerase->add_option("--alpha-z", de.alphaZ, "transformation gain alpha_z");
    drawerase->add_option("--beta-z", de.betaZ, "transformation gain beta_z");
    drawerase->add_option("--tau", de.tau, "movement time constant (s)");
    drawerase->add_option("--window", de.window, "Gaussian filter window (s)");
    drawerase->add_option("--draw-kp", de.drawKp, "draw-phase stiffness (N/m)");
    drawerase->add_option("--draw-bp", de.drawBp, "draw-phase damping (N s/m)");
    drawerase->add_option("--erase-kp", de.eraseKp, "erase-phase stiffness (N/m)");
    drawerase->add_option("--erase-bp", de.eraseBp, "erase-phase damping (N s/m)");
    drawerase->add_option("--radius", de.radius, "erase oscillation radius (m)");
    drawerase->add_option("--omega", de.omega, "erase oscillation angular velocity (rad/s)");
    drawerase->add_option("--draw-z", de.drawZ, "nominal z of the letter path (m)");
    drawerase->add_option("--pen-eps", de.penOffset, "pen offset below the table top (m)");
    auto* planeOpt = drawerase->add_option("--plane-z", dePlaneZ,
                                           "table top height (m), default draw-z - 0.01");
    drawerase->add_option("--plane-k", de.planeStiffness, "contact stiffness (N/m)");
    drawerase->add_option("--plane-b", de.planeDamping, "contact damping (N s/m)");
    drawerase->add_option("--plane-mu", de.planeViscosity, "tangential viscosity (N s/m)");
    drawerase->add_option("--settle", de.settle, "extra seconds per phase");

    // ---- dmp -----------------------------------------------------------
    auto* dmpCmd = app.add_subcommand("dmp", "standalone DMP learning and rollout");
    dmpCmd->require_subcommand(1);

    std::string learnDemo = dataPath("demo_letter.csv");
    std::string learnOut = "dmp_model.txt";
    DmpConfig learnCfg;
    learnCfg.dims = 2;
    learnCfg.nBasis = 100;
    learnCfg.alphaZ = 1000.0;
    learnCfg.betaZ = 250.0;
    learnCfg.tau = 7.0;
    double learnWindow = 0.165;
    auto* learn = dmpCmd->add_subcommand("learn", "fit forcing weights to a demonstration");
    learn->add_option("--demo", learnDemo, "demonstration CSV (t,x,y)");
    learn->add_option("--out", learnOut, "model file output path");
    learn->add_option("--n", learnCfg.nBasis, "number of basis functions");
    learn->add_option("--alpha-s", learnCfg.alphaS, "canonical decay rate");
    learn->add_option("--alpha-z", learnCfg.alphaZ, "transformation gain alpha_z");
    learn->add_option("--beta-z", learnCfg.betaZ, "transformation gain beta_z");
    learn->add_option("--tau", learnCfg.tau, "movement time constant (s)");
    learn->add_option("--window", learnWindow, "Gaussian filter window (s)");

    std::string rolloutModel;
    std::string rolloutOut = "dmp_rollout.csv";
    std::vector<double> rolloutXi, rolloutXg;
    double rolloutT = -1.0, rolloutDt = 1e-3;
    auto* rollout = dmpCmd->add_subcommand("rollout", "integrate a learned model");
    rollout->add_option("--model", rolloutModel, "model file")->required();
    rollout->add_option("--out", rolloutOut, "rollout CSV output path");
    rollout->add_option("--xi", rolloutXi, "initial position (defaults to the model's)");
    rollout->add_option("--xg", rolloutXg, "goal position (defaults to the model's)");
    rollout->add_option("--T", rolloutT, "rollout duration (s), default from the model");
    rollout->add_option("--dt", rolloutDt, "integration step (s)");

    // ---- demo ----------------------------------------------------------
    auto* demoCmd = app.add_subcommand("demo", "synthetic demonstration utilities");
    demoCmd->require_subcommand(1);
    DemoGenParams gen;
    std::string genOut = "demo.csv";
    auto* demoGen = demoCmd->add_subcommand("gen", "generate a synthetic drawing demo");
    demoGen->add_option("--out", genOut, "demo CSV output path");
    demoGen->add_option("--seed", gen.seed, "shape jitter seed (fixed seed = identical file)");
    demoGen->add_option("--rate", gen.rate, "sampling rate (Hz)");
    demoGen->add_option("--samples", gen.samples, "number of samples");
    demoGen->add_option("--center-x", gen.centerX, "path center x (m)");
    demoGen->add_option("--center-y", gen.centerY, "path center y (m)");
    demoGen->add_option("--size", gen.size, "stroke base radius (m)");

    CLI11_PARSE(app, argc, argv);

    const auto wallStart = std::chrono::steady_clock::now();

    if (sequence->parsed()) {
        seq.p1 = toVec3(seqP1);
        seq.p2 = toVec3(seqP2);
        seq.p3 = toVec3(seqP3);
        seq.includeSecondSubmovement = sequence->count("--no-second") == 0;
        const TaskResult result = runSequenceTask(seq);
        result.trace.writeCsv(seqOut);
        double err, fn;
        traceSummary(result.trace, err, fn);
        const double goalErr = (result.trace.p.back() - seq.p3).norm();
        std::printf("sequence: final_error=%.9e m goal_error=%.9e m peak_fn=%.9e N "
                    "wall=%.2f s trace=%s\n",
                    err, goalErr, fn, elapsedSince(wallStart), seqOut.c_str());
        return 0;
    }
    if (combine->parsed()) {
        comb.p1 = toVec3(combP1);
        comb.p2 = toVec3(combP2);
        const TaskResult result = runCombineTask(comb);
        result.trace.writeCsv(combOut);
        double err, fn;
        traceSummary(result.trace, err, fn);
        std::printf("combine: final_error=%.9e m peak_fn=%.9e N wall=%.2f s trace=%s\n",
                    err, fn, elapsedSince(wallStart), combOut.c_str());
        return 0;
    }
    if (drawerase->parsed()) {
        if (planeOpt->count() > 0) de.planeZ = dePlaneZ;
        const DrawEraseResult result = runDrawEraseTask(de);
        const Trace trace = result.combined();
        trace.writeCsv(deOut);
        double err, fn;
        traceSummary(trace, err, fn);
        size_t drawSteps = 0, drawContact = 0;
        for (size_t i = 0; i < result.drawTrace.rows(); ++i) {
            ++drawSteps;
            if (result.drawTrace.fn[i] > 0.5) ++drawContact;
        }
        std::printf("drawerase: final_error=%.9e m peak_fn=%.9e N draw_contact=%.1f%% "
                    "imitation_rmse=%.3e m wall=%.2f s trace=%s\n",
                    err, fn, 100.0 * static_cast<double>(drawContact) / drawSteps,
                    result.rolloutRmse, elapsedSince(wallStart), deOut.c_str());
        return 0;
    }
    if (learn->parsed()) {
        const DemoData raw = readDemoCsv(learnDemo);
        const Demonstration demo = preprocessDemo(raw.positions, raw.rate(), learnWindow);
        const char* names[2] = {"x", "y"};
        for (int d = 0; d < 2; ++d) {
            if (std::abs(demo.pos(demo.samples() - 1, d) - demo.pos(0, d)) <= 1e-9) {
                throw std::invalid_argument(std::string("demonstration: degenerate dimension ") +
                                            names[d] + " (goal equals initial position)");
            }
        }
        DmpModelFile file;
        file.config = learnCfg;
        file.weights = imitationLlsq(demo, learnCfg);
        file.xi = demo.pos.row(0).transpose();
        file.xg = demo.pos.row(demo.samples() - 1).transpose();
        file.duration = raw.duration();
        writeModelFile(learnOut, file);

        DmpModel model(learnCfg);
        model.setWeights(file.weights);
        const DmpRollout ro = model.rollout(file.xi, file.xg, 1e-3, file.duration);
        double sq = 0.0;
        for (int j = 0; j < demo.samples(); ++j) {
            const double t = demo.times[j];
            const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(t / ro.dt),
                                                  ro.x.rows() - 2);
            const double u = t / ro.dt - static_cast<double>(k);
            const Eigen::RowVector2d xr = (1.0 - u) * ro.x.row(k) + u * ro.x.row(k + 1);
            sq += (xr - demo.pos.row(j)).squaredNorm();
        }
        const double rmse = std::sqrt(sq / demo.samples());
        const double residual = imitationResidual(demo, learnCfg, file.weights);
        std::printf("dmp learn: residual=%.6e rollout_rmse=%.6e m wall=%.2f s model=%s\n",
                    residual, rmse, elapsedSince(wallStart), learnOut.c_str());
        return 0;
    }
    if (rollout->parsed()) {
        const DmpModelFile file = readModelFile(rolloutModel);
        DmpModel model(file.config);
        model.setWeights(file.weights);
        VectorXd xi = file.xi;
        VectorXd xg = file.xg;
        if (!rolloutXi.empty()) {
            xi = Eigen::Map<const VectorXd>(rolloutXi.data(), rolloutXi.size());
        }
        if (!rolloutXg.empty()) {
            xg = Eigen::Map<const VectorXd>(rolloutXg.data(), rolloutXg.size());
        }
        if (xi.size() != file.config.dims || xg.size() != file.config.dims) {
            throw std::invalid_argument("rollout endpoints must have " +
                                        std::to_string(file.config.dims) + " values");
        }
        const double T = rolloutT > 0.0 ? rolloutT : (file.duration > 0.0 ? file.duration : file.config.tau);
        const DmpRollout ro = model.rollout(xi, xg, rolloutDt, T);
        writeRolloutCsv(rolloutOut, ro);
        const double goalErr = (ro.x.row(ro.x.rows() - 1).transpose() - xg).norm();
        std::printf("dmp rollout: steps=%ld goal_error=%.6e wall=%.2f s out=%s\n",
                    static_cast<long>(ro.x.rows() - 1), goalErr, elapsedSince(wallStart),
                    rolloutOut.c_str());
        return 0;
    }
    if (demoGen->parsed()) {
        const DemoData demo = generateDemo(gen);
        writeDemoCsv(genOut, demo);
        std::printf("demo gen: samples=%d rate=%.1f Hz duration=%.6f s out=%s\n",
                    gen.samples, gen.rate, demo.duration(), genOut.c_str());
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return mainImpl(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
