// stp: command-line front door for the Saint-Petersburg Birkhoff toolkit.
// Exit codes: 0 success, 2 flag errors, 3 precondition violations.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stp/constructions.hpp"
#include "stp/dyadic.hpp"
#include "stp/experiments.hpp"
#include "stp/gibbs.hpp"
#include "stp/growth.hpp"
#include "stp/io.hpp"
#include "stp/pressure.hpp"
#include "stp/spectrum.hpp"

namespace {

using nlohmann::json;

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    return file;
}

stp::StreamFactory parse_source(const std::string& spec) {
    if (spec == "uniform")
        return [](std::uint64_t seed) { return stp::uniform_stream(seed); };
    if (spec.rfind("fm:", 0) == 0) {
        std::uint64_t m = std::stoull(spec.substr(3));
        return [m](std::uint64_t seed) { return stp::f_m_stream(m, seed); };
    }
    if (spec.rfind("gibbs:", 0) == 0) {
        double q = std::stod(spec.substr(6));
        auto dist = std::make_shared<stp::GibbsDistribution>(stp::build_distribution(q));
        return [dist](std::uint64_t seed) { return stp::gibbs_stream(*dist, seed); };
    }
    throw std::invalid_argument("source spec: expected uniform | fm:M | gibbs:Q, got '" +
                                spec + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Birkhoff sums of the Saint-Petersburg potential: pressure roots, "
                 "multifractal spectrum, Gibbs sampling, constructed fast-growth "
                 "points, and regime classification",
                 "stp"};
    app.require_subcommand(1);

    // pressure
    double p_t = 0, p_q = 0, p_tol = 1e-15;
    auto* c_pressure = app.add_subcommand("pressure", "evaluate the pressure series at (t, q)");
    c_pressure->add_option("--t", p_t, "potential weight t")->required();
    c_pressure->add_option("--q", p_q, "payoff weight q > 0")->required();
    c_pressure->add_option("--tol", p_tol, "relative tail tolerance");

    // tq
    double tq_q = 0;
    auto* c_tq = app.add_subcommand("tq", "solve t(q) with its derivative t'(q)");
    c_tq->add_option("--q", tq_q, "payoff weight q > 0")->required();

    // spectrum
    double s_amin = 0, s_amax = 0;
    int s_steps = 0, s_threads = 1;
    std::string s_out = "-";
    auto* c_spectrum = app.add_subcommand("spectrum", "dimension spectrum over an alpha grid (CSV)");
    c_spectrum->add_option("--alpha-min", s_amin, "grid start, >= 1")->required();
    c_spectrum->add_option("--alpha-max", s_amax, "grid end")->required();
    c_spectrum->add_option("--steps", s_steps, "grid size, >= 2")->required();
    c_spectrum->add_option("--out", s_out, "output file, - for stdout");
    c_spectrum->add_option("--threads", s_threads, "worker threads");

    // gibbs
    double g_q = 0;
    std::uint64_t g_ell = 0, g_reps = 0, g_seed = 0;
    int g_threads = 1;
    auto* c_gibbs = app.add_subcommand("gibbs", "sample the Gibbs block measure and report its statistics (JSON)");
    c_gibbs->add_option("--q", g_q, "payoff weight q > 0")->required();
    c_gibbs->add_option("--ell", g_ell, "blocks per repetition")->required();
    c_gibbs->add_option("--reps", g_reps, "repetitions")->required();
    c_gibbs->add_option("--seed", g_seed, "base seed")->required();
    c_gibbs->add_option("--threads", g_threads, "worker threads");

    // weak-law
    std::uint64_t w_n = 0, w_samples = 0, w_seed = 0;
    int w_threads = 1;
    auto* c_weak = app.add_subcommand("weak-law", "quantiles of S_n/(n ln n) over uniform streams (JSON)");
    c_weak->add_option("--n", w_n, "orbit length, >= 16")->required();
    c_weak->add_option("--samples", w_samples, "number of streams, >= 100")->required();
    c_weak->add_option("--seed", w_seed, "base seed")->required();
    c_weak->add_option("--threads", w_threads, "worker threads");

    // construct
    std::string k_psi, k_filler = "seeded";
    double k_beta = 0;
    std::uint64_t k_digits = 0, k_m = 0, k_seed = 0;
    auto* c_construct = app.add_subcommand("construct", "emit a level-set point tracking beta*Psi (header, digits, CSV trace)");
    c_construct->add_option("--psi", k_psi, "growth spec: nlogn | n^A | 2^n^G")->required();
    c_construct->add_option("--beta", k_beta, "target multiplier, finite positive")->required();
    c_construct->add_option("--digits", k_digits, "prefix length to emit")->required();
    c_construct->add_option("--m", k_m, "filler block period, >= 2")->required();
    c_construct->add_option("--seed", k_seed, "filler seed")->required();
    c_construct->add_option("--filler", k_filler, "deterministic | seeded");

    // infinity
    double i_gamma = 0;
    std::uint64_t i_digits = 0;
    auto* c_infinity = app.add_subcommand("infinity", "emit the zero-block point with S_n/2^(n^gamma) -> infinity");
    c_infinity->add_option("--gamma", i_gamma, "exponent in [1/2, 1)")->required();
    c_infinity->add_option("--digits", i_digits, "prefix length to emit")->required();

    // classify
    std::string y_psi, y_beta_class, y_potential;
    auto* c_classify = app.add_subcommand("classify", "growth-regime verdict for a level set");
    c_classify->add_option("--psi", y_psi, "growth spec: nlogn | n^A | 2^n^G")->required();
    c_classify->add_option("--beta-class", y_beta_class, "zero | finite | infinity")->required();
    c_classify->add_option("--potential", y_potential, "phi | g")->required();

    // trace
    std::string t_psi, t_file;
    auto* c_trace = app.add_subcommand("trace", "ratio trace S_n vs Psi(n) along a digit file (CSV)");
    c_trace->add_option("--psi", t_psi, "growth spec: nlogn | n^A | 2^n^G")->required();
    c_trace->add_option("--digits-file", t_file, "file with one 0/1 digit line")->required();

    // orbit
    std::string o_file, o_potential;
    std::uint64_t o_n = 0;
    auto* c_orbit = app.add_subcommand("orbit", "exact Birkhoff sums along a digit prefix (CSV)");
    c_orbit->add_option("--prefix-file", o_file, "file with one 0/1 digit line")->required();
    c_orbit->add_option("--potential", o_potential, "phi | g")->required();
    c_orbit->add_option("--n", o_n, "number of orbit steps")->required();

    // dichotomy
    std::string d_psi;
    std::uint64_t d_n = 0;
    auto* c_dichotomy = app.add_subcommand("dichotomy", "partial sums of the tail-measure series (CSV checkpoints)");
    c_dichotomy->add_option("--psi", d_psi, "growth spec: nlogn | n^A | 2^n^G")->required();
    c_dichotomy->add_option("--N", d_n, "number of terms")->required();

    // entropy
    std::string e_source;
    int e_depth = 0, e_threads = 1;
    std::uint64_t e_samples = 0, e_seed = 0;
    auto* c_entropy = app.add_subcommand("entropy", "entropy-rate dimension proxy of a sampler (JSON)");
    c_entropy->add_option("--source", e_source, "uniform | fm:M | gibbs:Q")->required();
    c_entropy->add_option("--depth", e_depth, "prefix depth, >= 4")->required();
    c_entropy->add_option("--samples", e_samples, "number of streams")->required();
    c_entropy->add_option("--seed", e_seed, "base seed")->required();
    c_entropy->add_option("--threads", e_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "flag error: " << e.what() << "\n";
        return 2;
    }

    if (c_pressure->parsed()) {
        stp::PressureEvaluation pe = stp::eval_pressure(p_t, p_q, p_tol);
        json j{{"t", pe.t},       {"q", pe.q},
               {"value", pe.value}, {"dP_dt", pe.dP_dt},
               {"dP_dq", pe.dP_dq}, {"terms_used", pe.terms_used},
               {"tail_bound", pe.tail_bound}};
        std::cout << j.dump() << "\n";
    } else if (c_tq->parsed()) {
        stp::PressureSolution sol = stp::solve_t(tq_q);
        json j{{"q", sol.q},
               {"t", sol.t_of_q},
               {"t_prime", sol.t_prime},
               {"residual", sol.residual},
               {"bracket", {sol.bracket[0], sol.bracket[1]}}};
        std::cout << j.dump() << "\n";
    } else if (c_spectrum->parsed()) {
        auto rows = stp::spectrum_curve(s_amin, s_amax, s_steps, s_threads);
        std::ofstream file;
        stp::write_spectrum_csv(open_out(s_out, file), rows);
    } else if (c_gibbs->parsed()) {
        stp::GibbsDistribution dist = stp::build_distribution(g_q);
        stp::GibbsStatistics st = stp::gibbs_statistics(dist, g_ell, g_reps, g_seed, g_threads);
        json j{{"q", dist.q},
               {"t", dist.t},
               {"alpha", dist.alpha},
               {"alpha_hat", st.alpha_hat},
               {"alpha_se", st.alpha_se},
               {"mean_block", st.mean_block},
               {"samples", st.samples},
               {"localdim_hat", st.localdim_hat},
               {"localdim_target", st.localdim_target},
               {"ell", g_ell},
               {"reps", g_reps},
               {"seed", g_seed},
               {"max_block_seen", st.max_block_seen}};
        std::cout << j.dump() << "\n";
    } else if (c_weak->parsed()) {
        stp::QuantileReport rep = stp::weak_law(w_n, w_samples, w_seed, w_threads);
        json q;
        for (const auto& [level, value] : rep.quantiles)
            q[stp::format_sig12(level)] = value;
        json j{{"n", rep.n},
               {"samples", rep.samples},
               {"seed", rep.seed},
               {"quantiles", q},
               {"target", rep.target}};
        std::cout << j.dump() << "\n";
    } else if (c_construct->parsed()) {
        stp::GrowthFunction psi = stp::parse_psi(k_psi);
        stp::FillerPolicy filler;
        if (k_filler == "deterministic") filler = stp::FillerPolicy::Deterministic;
        else if (k_filler == "seeded") filler = stp::FillerPolicy::Seeded;
        else throw std::invalid_argument("construct: --filler must be deterministic or seeded");
        stp::CantorSchedule schedule(psi, k_beta, k_m);
        stp::DigitStream stream = stp::cantor_stream(schedule, filler, k_seed);
        stp::BinaryWord prefix = stream.take(k_digits);

        json header{{"psi", stp::format_psi(psi)}, {"beta", k_beta},
                    {"m", k_m},                    {"seed", k_seed},
                    {"filler", k_filler},          {"first_level", schedule.first_level()},
                    {"delta", schedule.delta()},   {"digits", k_digits}};
        std::cout << header.dump() << "\n";
        stp::write_digit_line(std::cout, prefix);

        std::cout << "k,N_k,S_NK_log2,psi_log2,ratio\n";
        stp::BigInt s = 0;
        std::uint64_t pos = 0;
        std::uint64_t k = schedule.first_level();
        // leading all-ones prefix before the first feasible level
        for (std::uint64_t lead = schedule.checkpoint(k - 1); pos < lead; ++pos) s += 1;
        while (schedule.checkpoint(k) <= k_digits) {
            const std::uint64_t nk = schedule.checkpoint(k);
            while (pos < nk) {
                std::uint64_t run = 1;
                while (prefix[pos + run - 1] == 0) ++run;
                s += stp::pow2_big(run) - 1;
                pos += run;
            }
            const double l2s = stp::log2_big(s);
            const double l2p = std::log2(k_beta) + stp::psi_log2(psi, nk);
            std::cout << k << ',' << nk << ',' << stp::format_sig12(l2s) << ','
                      << stp::format_sig12(l2p) << ','
                      << stp::format_sig12(std::exp2(l2s - l2p)) << "\n";
            ++k;
        }
    } else if (c_infinity->parsed()) {
        stp::DigitStream stream = stp::infinity_stream(i_gamma);
        stp::BinaryWord prefix = stream.take(i_digits);
        json header{{"gamma", i_gamma},
                    {"delta", (i_gamma + 1.0) / 2.0},
                    {"digits", i_digits}};
        std::cout << header.dump() << "\n";
        stp::write_digit_line(std::cout, prefix);
    } else if (c_classify->parsed()) {
        stp::GrowthFunction psi = stp::parse_psi(y_psi);
        stp::BetaClass bc;
        if (y_beta_class == "zero") bc = stp::BetaClass::Zero;
        else if (y_beta_class == "finite") bc = stp::BetaClass::FinitePositive;
        else if (y_beta_class == "infinity") bc = stp::BetaClass::Infinity;
        else throw std::invalid_argument("classify: --beta-class must be zero, finite, or infinity");
        stp::Potential pot;
        if (y_potential == "phi") pot = stp::Potential::Phi;
        else if (y_potential == "g") pot = stp::Potential::G;
        else throw std::invalid_argument("classify: --potential must be phi or g");
        stp::RegimeVerdict v = stp::classify(psi, bc, pot);
        std::cout << (v.verdict == stp::RegimeVerdict::Verdict::FullDimension
                          ? "full-dimension"
                          : "empty")
                  << "  # " << v.citation << "\n";
    } else if (c_trace->parsed()) {
        stp::GrowthFunction psi = stp::parse_psi(t_psi);
        stp::BinaryWord prefix = stp::read_digit_file(t_file);
        // checkpoints past the last 1 would need digits beyond the file
        std::uint64_t last_one = 0;
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (prefix[i] == 1) last_one = i + 1;
        stp::DigitStream stream = stp::prefix_stream(prefix);
        stp::RatioTrace trace = stp::ratio_trace(stream, psi, last_one);
        stp::write_trace_csv(std::cout, trace);
    } else if (c_orbit->parsed()) {
        stp::BinaryWord prefix = stp::read_digit_file(o_file);
        if (o_potential == "phi") {
            stp::BigSumTrace trace = stp::birkhoff_phi_trace(prefix, o_n);
            std::cout << "n,S_n\n";
            for (std::size_t i = 0; i < trace.values.size(); ++i)
                std::cout << (i + 1) << ',' << trace.values[i].str() << "\n";
        } else if (o_potential == "g") {
            auto trace = stp::birkhoff_g_interval_trace(prefix, o_n);
            std::cout << "n,lower,upper\n";
            for (std::size_t i = 0; i < trace.size(); ++i)
                std::cout << (i + 1) << ','
                          << stp::format_sig12(stp::to_double_down(trace[i].lower)) << ','
                          << stp::format_sig12(stp::to_double_up(trace[i].upper)) << "\n";
        } else {
            throw std::invalid_argument("orbit: --potential must be phi or g");
        }
    } else if (c_dichotomy->parsed()) {
        stp::GrowthFunction psi = stp::parse_psi(d_psi);
        std::vector<double> sums = stp::dichotomy_series(psi, d_n);
        std::cout << "n,partial_sum\n";
        for (std::uint64_t n = 1; n <= d_n; n *= 2)
            std::cout << n << ',' << stp::format_sig12(sums[n - 1]) << "\n";
        if ((d_n & (d_n - 1)) != 0)
            std::cout << d_n << ',' << stp::format_sig12(sums[d_n - 1]) << "\n";
    } else if (c_entropy->parsed()) {
        stp::StreamFactory factory = parse_source(e_source);
        double estimate = stp::entropy_dim_estimate(factory, e_depth, e_samples, e_seed, e_threads);
        json j{{"source", e_source}, {"depth", e_depth},
               {"samples", e_samples}, {"seed", e_seed},
               {"estimate", estimate}};
        std::cout << j.dump() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const stp::InsufficientDigits& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
