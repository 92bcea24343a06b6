#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnet/combinatorics.hpp"
#include "pnet/functionals.hpp"
#include "pnet/models.hpp"
#include "pnet/outage.hpp"
#include "pnet/simulator.hpp"

namespace {

using pnet::LinkConfig;
using pnet::NetworkConfig;
using pnet::QuadratureSpec;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

using Row = std::vector<std::pair<std::string, std::string>>;

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// CSV (default) or JSON-lines sink writing to stdout or --out
class Emitter {
public:
    Emitter(const std::string& path, bool json) : json_(json) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw CLI::ValidationError("--out", "cannot open " + path);
        }
    }
    void row(const Row& r) {
        std::ostream& os = file_.is_open() ? file_ : std::cout;
        if (json_) {
            nlohmann::ordered_json j;
            for (const auto& [k, v] : r) j[k] = v;
            os << j.dump() << "\n";
            return;
        }
        if (!header_done_) {
            for (size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << csv_quote(r[i].first);
            os << "\n";
            header_done_ = true;
        }
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_quote(r[i].second);
        os << "\n";
    }

private:
    bool json_;
    bool header_done_ = false;
    std::ofstream file_;
};

struct SweepRange {
    double lo = 0, hi = 0;
    int steps = 0;
    double at(int i, bool log_scale) const {
        double t = steps == 1 ? 0.0 : double(i) / (steps - 1);
        if (log_scale) return lo * std::pow(hi / lo, t);
        return lo + (hi - lo) * t;
    }
};

SweepRange parse_range(const std::string& s) {
    SweepRange r;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.steps) || c1 != ':' || c2 != ':' ||
        !(r.lo < r.hi) || r.steps < 2)
        throw CLI::ValidationError("--lambda-sweep", "expected lo:hi:steps with lo < hi, steps >= 2");
    return r;
}

// flags shared by every subcommand that builds a NetworkConfig
struct ModelFlags {
    double lambda = 0.1;
    double tx_prob = 1.0;
    double alpha = 4.0;
    std::string fading = "rayleigh";
    std::string pathloss = "singular";
    bool normalize_mean = false;
    std::string lambda_sweep;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lambda", lambda, "interferer intensity");
        cmd->add_option("--tx-prob", tx_prob, "ALOHA transmit probability");
        cmd->add_option("--alpha", alpha, "path loss exponent (> 2)");
        cmd->add_option("--fading", fading,
                        "rayleigh | erlang:k | rice:k,psi | nakagami:m");
        cmd->add_option("--pathloss", pathloss, "singular | min | eps:e | dist1");
        cmd->add_flag("--normalize-mean", normalize_mean, "rescale fading to unit mean");
        cmd->add_option("--lambda-sweep", lambda_sweep, "lo:hi:steps instead of --lambda");
        cmd->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
        cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
    }

    NetworkConfig network(double lam) const {
        NetworkConfig cfg;
        cfg.lambda = lam;
        cfg.wp = tx_prob;
        cfg.fading = pnet::FadingModel::parse(fading);
        cfg.fading.normalize_mean = normalize_mean;
        cfg.pathloss = pnet::PathLossModel::parse(pathloss, alpha);
        return cfg;
    }
    QuadratureSpec quad() const { return {abs_tol, rel_tol}; }
    std::vector<double> lambdas() const {
        if (lambda_sweep.empty()) return {lambda};
        SweepRange r = parse_range(lambda_sweep);
        std::vector<double> v;
        for (int i = 0; i < r.steps; ++i) v.push_back(r.at(i, false));
        return v;
    }
};

pnet::ExponentVector parse_p(const std::string& s) {
    pnet::ExponentVector p;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) p.push_back(std::stoi(tok));
    if (p.empty()) throw CLI::ValidationError("--p", "expected comma-separated exponents");
    return p;
}

Row model_cols(const ModelFlags& mf, double lam) {
    return {{"lambda", fmt9(lam)},
            {"tx_prob", fmt9(mf.tx_prob)},
            {"alpha", fmt9(mf.alpha)},
            {"fading", mf.fading},
            {"pathloss", mf.pathloss}};
}

void append(Row& r, const Row& extra) { r.insert(r.end(), extra.begin(), extra.end()); }

Row outage_cols(const pnet::OutageSummary& s) {
    return {{"p_success", fmt9(s.p_success)},
            {"p_joint", fmt9(s.p_joint)},
            {"p_joint_outage", fmt9(s.p_joint_outage)},
            {"p_at_least_one", fmt9(s.p_at_least_one)},
            {"p_indep_square", fmt9(s.p_indep_square)},
            {"p_indep_diversity", fmt9(s.p_indep_diversity)}};
}

int run_functional(const ModelFlags& mf, const std::string& p_str, double c,
                   bool dump_matrices, Emitter& out) {
    pnet::ExponentVector p = parse_p(p_str);
    if (dump_matrices) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (int l = 1; l <= pnet::norm1(p); ++l)
            for (const auto& m : pnet::enumerate_matrices(p, l)) {
                nlohmann::ordered_json jm;
                jm["l"] = l;
                jm["rows"] = m.rows;
                jm["entries"] = m.entries;
                jm["multiplicity"] = pnet::multiplicity(m);
                doc.push_back(jm);
            }
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    for (double lam : mf.lambdas()) {
        pnet::FunctionalSpec spec{p, c};
        double v = pnet::interference_functional(mf.network(lam), spec, mf.quad());
        Row r = model_cols(mf, lam);
        append(r, {{"p", p_str}, {"c", fmt9(c)}, {"value", fmt9(v)}});
        out.row(r);
    }
    return 0;
}

LinkConfig make_link(const ModelFlags& mf, double lam, int m, double theta, double d) {
    LinkConfig link;
    link.net = mf.network(lam);
    link.net.fading = pnet::FadingModel::parse(m == 1 ? "rayleigh" : "nakagami:" + std::to_string(m));
    link.m = m;
    link.theta = theta;
    link.d = d;
    return link;
}

int run_outage(const ModelFlags& mf, int m, double theta, double d, Emitter& out) {
    for (double lam : mf.lambdas()) {
        LinkConfig link = make_link(mf, lam, m, theta, d);
        pnet::OutageSummary s = pnet::outage_summary(link, mf.quad());
        Row r = model_cols(mf, lam);
        append(r, {{"m", std::to_string(m)}, {"theta", fmt9(theta)}, {"d", fmt9(d)}});
        append(r, outage_cols(s));
        out.row(r);
    }
    return 0;
}

int run_simulate(const ModelFlags& mf, const std::string& quantity, const std::string& p_str,
                 double c, int m, double theta, double d, const pnet::SimConfig& sim,
                 Emitter& out) {
    for (double lam : mf.lambdas()) {
        Row r = model_cols(mf, lam);
        append(r, {{"quantity", quantity},
                   {"reps", std::to_string(sim.reps)},
                   {"seed", std::to_string(sim.seed)}});
        if (quantity == "functional") {
            pnet::FunctionalSpec spec{parse_p(p_str), c};
            auto e = pnet::estimate_functional(mf.network(lam), spec, sim);
            append(r, {{"p", p_str}, {"c", fmt9(c)}, {"mean", fmt9(e.mean)},
                       {"std_error", fmt9(e.std_error)}, {"window", fmt9(e.window)},
                       {"tail_mean", fmt9(e.tail_mean)}, {"bias_bound", fmt9(e.bias_bound)}});
        } else {
            LinkConfig link = make_link(mf, lam, m, theta, d);
            append(r, {{"m", std::to_string(m)}, {"theta", fmt9(theta)}, {"d", fmt9(d)}});
            if (quantity == "success") {
                auto e = pnet::estimate_success(link, sim);
                append(r, {{"mean", fmt9(e.mean)}, {"std_error", fmt9(e.std_error)},
                           {"window", fmt9(e.window)}, {"tail_mean", fmt9(e.tail_mean)},
                           {"bias_bound", fmt9(e.bias_bound)}});
            } else {  // joint
                auto e = pnet::estimate_joint(link, sim);
                append(r, {{"p_success", fmt9(e.p_success.mean)},
                           {"p_success_se", fmt9(e.p_success.std_error)},
                           {"p_joint", fmt9(e.p_joint.mean)},
                           {"p_joint_se", fmt9(e.p_joint.std_error)},
                           {"window", fmt9(e.p_joint.window)},
                           {"tail_mean", fmt9(e.p_joint.tail_mean)},
                           {"bias_bound", fmt9(e.p_joint.bias_bound)}});
            }
        }
        out.row(r);
    }
    return 0;
}

// named sweeps reproducing the figure parameter sets
int run_preset(const std::string& preset, Emitter& out, const QuadratureSpec& quad) {
    auto lin = [](double lo, double hi, int n) {
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / double(n - 1));
        return v;
    };
    auto emit_outage_curves = [&](const std::vector<int>& ms, const std::vector<double>& alphas,
                                  const std::vector<double>& lambdas, double theta,
                                  std::function<double(double)> dist) {
        ModelFlags mf;
        for (int m : ms)
            for (double alpha : alphas)
                for (double lam : lambdas) {
                    mf.alpha = alpha;
                    LinkConfig link = make_link(mf, lam, m, theta, dist(alpha));
                    pnet::OutageSummary s = pnet::outage_summary(link, quad);
                    Row r{{"m", std::to_string(m)}, {"alpha", fmt9(alpha)},
                          {"lambda", fmt9(lam)}, {"theta", fmt9(theta)},
                          {"d", fmt9(dist(alpha))}};
                    append(r, outage_cols(s));
                    out.row(r);
                }
    };

    if (preset == "fig1") {
        for (double alpha : {2.5, 3.0, 4.0, 5.0})
            for (double lam : lin(0.008, 0.8, 100)) {
                double v = pnet::rayleigh_singular_moment(1, lam, 1.0, alpha);
                out.row({{"alpha", fmt9(alpha)}, {"lambda", fmt9(lam)}, {"value", fmt9(v)}});
            }
    } else if (preset == "fig2") {
        emit_outage_curves({3}, {2.5, 3.0, 4.0, 5.0}, lin(0.001, 0.03, 30), 0.5,
                           [](double) { return 2.0; });
    } else if (preset == "fig3") {
        std::vector<double> alphas;
        for (double a = 2.1; a <= 6.0 + 1e-9; a += 0.1) alphas.push_back(a);
        emit_outage_curves({1, 2, 3, 4, 5}, alphas, {0.03}, 1.0, [](double) { return 2.0; });
    } else if (preset == "fig4") {
        emit_outage_curves({1, 2, 3, 4, 5}, {3.0}, lin(1e-4, 0.1, 50), 0.5,
                           [](double) { return 2.0; });
    } else if (preset == "fig5") {
        std::vector<double> alphas;
        for (double a = 2.1; a <= 6.0 + 1e-9; a += 0.1) alphas.push_back(a);
        emit_outage_curves({1, 2, 3, 4, 5}, alphas, {0.01}, 0.5,
                           [](double alpha) { return std::pow(4.0, 1.0 / alpha); });
    } else if (preset == "fig6" || preset == "fig7") {
        emit_outage_curves({3}, {2.5, 3.0, 4.0, 5.0}, lin(0.001, 0.03, 30), 0.5,
                           [](double) { return 2.0; });
    } else {
        throw CLI::ValidationError("--preset", "unknown preset " + preset);
    }
    return 0;
}

int run_sweep(const ModelFlags& mf, const std::string& quantity, const std::string& preset,
              int k, Emitter& out) {
    if (!preset.empty()) return run_preset(preset, out, mf.quad());
    if (quantity == "i-exp-i" || quantity == "moment") {
        int order = quantity == "i-exp-i" ? 1 : k;
        for (double lam : mf.lambdas()) {
            if (lam <= 0.0) continue;  // degenerate endpoint of a [0, hi] sweep
            double v = pnet::rayleigh_singular_moment(order, lam, mf.tx_prob, mf.alpha);
            Row r = model_cols(mf, lam);
            append(r, {{"k", std::to_string(order)}, {"value", fmt9(v)}});
            out.row(r);
        }
        return 0;
    }
    throw CLI::ValidationError("--quantity", "unknown quantity " + quantity);
}

struct VerifyCase {
    std::string name;
    double analytic;
    pnet::MonteCarloEstimate mc;
};

int run_verify(const std::string& suite, std::uint64_t seed, Emitter& out) {
    const std::uint64_t reps = suite == "full" ? 400000 : 40000;
    std::vector<VerifyCase> cases;
    QuadratureSpec quad;

    {
        ModelFlags mf;
        mf.lambda = 0.1;
        mf.alpha = 4.0;
        NetworkConfig cfg = mf.network(0.1);
        pnet::FunctionalSpec spec{{1}, 1.0};
        pnet::SimConfig sim{0.0, reps, seed};
        cases.push_back({"functional_rayleigh_singular_a4",
                         pnet::interference_functional(cfg, spec, quad),
                         pnet::estimate_functional(cfg, spec, sim)});
    }
    for (double alpha : {3.0, 4.0}) {
        ModelFlags mf;
        mf.alpha = alpha;
        LinkConfig link = make_link(mf, 0.01, 3, 0.5, 2.0);
        pnet::SimConfig sim{0.0, reps, seed + 1};
        auto je = pnet::estimate_joint(link, sim);
        cases.push_back({"success_m3_a" + fmt9(alpha),
                         pnet::success_probability(link, quad), je.p_success});
        cases.push_back({"joint_m3_a" + fmt9(alpha),
                         pnet::joint_success_probability(link, quad), je.p_joint});
    }

    bool ok = true;
    for (const auto& c : cases) {
        double z = (c.mc.mean - c.analytic) / c.mc.std_error;
        bool pass = std::fabs(z) <= 4.0;
        ok = ok && pass;
        out.row({{"case", c.name},
                 {"analytic", fmt9(c.analytic)},
                 {"mc_mean", fmt9(c.mc.mean)},
                 {"mc_se", fmt9(c.mc.std_error)},
                 {"z", fmt9(z)},
                 {"pass", pass ? "1" : "0"}});
    }
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sum-product functionals and outage probabilities of Poisson networks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key-value file mirroring the flags; flags override");

    std::string out_path;
    bool json = false;
    app.add_option("--out", out_path, "write rows to a file instead of stdout")->configurable(false);
    app.add_flag("--json", json, "emit JSON lines instead of CSV");

    ModelFlags mf;
    std::string p_str = "1";
    double c = 1.0;
    bool dump_matrices = false;
    int m = 1;
    double theta = 1.0, d = 1.0;
    std::string quantity_sim = "functional";
    std::string quantity_sweep = "i-exp-i";
    std::string preset;
    int k = 1;
    pnet::SimConfig sim;
    std::string suite = "quick";
    std::uint64_t verify_seed = 1;

    auto* c_func = app.add_subcommand("functional", "E[prod I_i^{p_i} exp(-c I_i)], analytic");
    mf.attach(c_func);
    c_func->add_option("--p", p_str, "comma-separated slot exponents");
    c_func->add_option("--c", c, "damping constant");
    c_func->add_flag("--dump-matrices", dump_matrices, "print the exponent matrix classes as JSON");

    auto* c_out = app.add_subcommand("outage", "single/joint transmission success, analytic");
    mf.attach(c_out);
    c_out->add_option("--m", m, "Nakagami parameter (positive integer)");
    c_out->add_option("--theta", theta, "SIR threshold");
    c_out->add_option("--d", d, "link distance");
    auto* c_joint = app.add_subcommand("joint", "alias of outage (same columns)");
    mf.attach(c_joint);
    c_joint->add_option("--m", m);
    c_joint->add_option("--theta", theta);
    c_joint->add_option("--d", d);

    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo estimates");
    mf.attach(c_sim);
    c_sim->add_option("--quantity", quantity_sim, "functional | success | joint");
    c_sim->add_option("--p", p_str);
    c_sim->add_option("--c", c);
    c_sim->add_option("--m", m);
    c_sim->add_option("--theta", theta);
    c_sim->add_option("--d", d);
    c_sim->add_option("--reps", sim.reps, "replications");
    c_sim->add_option("--seed", sim.seed, "base seed");
    c_sim->add_option("--window", sim.window, "disc radius (0 = auto)");

    auto* c_sweep = app.add_subcommand("sweep", "parameter sweeps and figure presets");
    mf.attach(c_sweep);
    c_sweep->add_option("--quantity", quantity_sweep, "i-exp-i | moment");
    c_sweep->add_option("--k", k, "moment order for --quantity moment");
    c_sweep->add_option("--preset", preset, "fig1..fig7");

    auto* c_verify = app.add_subcommand("verify", "matched analytic vs Monte Carlo pairs");
    c_verify->add_option("--suite", suite, "quick | full");
    c_verify->add_option("--seed", verify_seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Emitter out(out_path, json);
        if (c_func->parsed()) return run_functional(mf, p_str, c, dump_matrices, out);
        if (c_out->parsed() || c_joint->parsed()) return run_outage(mf, m, theta, d, out);
        if (c_sim->parsed())
            return run_simulate(mf, quantity_sim, p_str, c, m, theta, d, sim, out);
        if (c_sweep->parsed()) return run_sweep(mf, quantity_sweep, preset, k, out);
        if (c_verify->parsed()) return run_verify(suite, verify_seed, out);
    } catch (const pnet::AccuracyError& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
