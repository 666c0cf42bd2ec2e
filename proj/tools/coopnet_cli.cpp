// Command-line front end: scenario ingestion, coalition-value queries, core and
// cohesiveness analysis, detector-stability checks, equal-split stability maps,
// clustered-uplink rate regions, and the acceptance suite.
//
// Exit codes: 0 success (or positive verdict: non-empty core, cohesive,
// stable, contained), 10 negative verdict (empty core, not cohesive, blocked
// grand coalition), 1 any error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coopnet/channel.hpp"
#include "coopnet/coalition.hpp"
#include "coopnet/core.hpp"
#include "coopnet/errors.hpp"
#include "coopnet/game.hpp"
#include "coopnet/pdf.hpp"
#include "coopnet/rx_coop.hpp"
#include "coopnet/tx_perfect.hpp"
#include "coopnet/verify.hpp"

#ifndef COOPNET_FIXTURE_DIR
#define COOPNET_FIXTURE_DIR "fixtures"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 10;  // empty core / not cohesive / blocked / region verdict

using coopnet::Coalition;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw coopnet::ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A scenario file either describes a channel or directly a TU value table
/// (detected by its "values" key).
struct LoadedInput {
    std::optional<coopnet::Scenario> scenario;
    std::optional<coopnet::TuGame> game;
};

LoadedInput load_input(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw coopnet::ParseError(path + ": " + e.what());
    }
    LoadedInput in;
    if (j.contains("values"))
        in.game = coopnet::TuGame::from_json(j);
    else
        in.scenario = coopnet::scenario_from_json(j);
    return in;
}

Coalition parse_mask(const std::string& text, std::size_t k) {
    int base = 10;
    std::size_t off = 0;
    if (text.rfind("0b", 0) == 0 || text.rfind("0B", 0) == 0) {
        base = 2;
        off = 2;
    } else if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
        base = 16;
        off = 2;
    }
    unsigned long mask = 0;
    std::size_t used = 0;
    try {
        mask = std::stoul(text.substr(off), &used, base);
    } catch (const std::exception&) {
        throw coopnet::SchemaError("coalition mask \"" + text + "\" is not a number");
    }
    if (used != text.size() - off)
        throw coopnet::SchemaError("coalition mask \"" + text + "\" has trailing characters");
    if (mask == 0) throw coopnet::SchemaError("coalition mask must be nonempty");
    if (mask > coopnet::grand_coalition(k))
        throw coopnet::SchemaError("coalition mask " + text + " names links outside the " +
                                   std::to_string(k) + "-link scenario");
    return static_cast<Coalition>(mask);
}

const coopnet::InterferenceChannel& need_ic(const coopnet::Scenario& sc, const std::string& model) {
    const auto* ic = std::get_if<coopnet::InterferenceChannel>(&sc);
    if (!ic)
        throw coopnet::SchemaError("model " + model + " needs an interference-channel scenario");
    return *ic;
}

const coopnet::CdmaMac& need_cdma(const coopnet::Scenario& sc, const std::string& model) {
    const auto* c = std::get_if<coopnet::CdmaMac>(&sc);
    if (!c) throw coopnet::SchemaError("model " + model + " needs a cdma scenario");
    return *c;
}

std::vector<double> cdma_snrs(const coopnet::CdmaMac& c) {
    std::vector<double> snrs(c.K);
    for (std::size_t k = 0; k < c.K; ++k) snrs[k] = c.h[k] * c.h[k] * c.P / c.sigma2;
    return snrs;
}

/// Members printed 1-based, the convention of the rate-region CSV columns;
/// the grand coalition is abbreviated.
std::string user_label(Coalition s, std::size_t k) {
    if (s == coopnet::grand_coalition(k)) return "GC";
    std::string out = "{";
    bool first = true;
    for (std::size_t m : coopnet::members(s)) {
        if (!first) out += ",";
        out += std::to_string(m + 1);
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// value

struct ValueOpts {
    std::string scenario, model, coalition;
};

int run_value(const ValueOpts& o) {
    const LoadedInput in = load_input(o.scenario);
    std::cout << std::fixed << std::setprecision(6);

    if (in.game) {
        const Coalition s = parse_mask(o.coalition, in.game->num_players());
        std::cout << in.game->value(s) << "\n";
        return kExitOk;
    }
    if (o.model.empty())
        throw coopnet::SchemaError("--model is required for channel scenarios");

    const coopnet::Scenario& sc = *in.scenario;
    if (o.model == "rx-joint") {
        const auto& ic = need_ic(sc, o.model);
        const Coalition s = parse_mask(o.coalition, ic.K);
        std::cout << coopnet::value_joint_decoding(ic, s) << "\n";
    } else if (o.model == "tx-perfect") {
        const auto& ic = need_ic(sc, o.model);
        const Coalition s = parse_mask(o.coalition, ic.K);
        const coopnet::SaddleResult res = coopnet::value_tx_jamming(ic, s);
        std::cout << res.value_bits << "\n";
        std::cout << "# saddle: converged=" << (res.converged ? "yes" : "NO")
                  << " outer-iterations=" << res.iterations << " value-gap-tol=1e-07\n";
    } else if (o.model == "single-receiver-mac") {
        const auto& c = need_cdma(sc, o.model);
        const Coalition s = parse_mask(o.coalition, c.K);
        std::cout << coopnet::single_receiver_mac_game(cdma_snrs(c)).value(s) << "\n";
    } else if (o.model == "mud-mmse" || o.model == "mud-decorrelator") {
        const auto& c = need_cdma(sc, o.model);
        const Coalition s = parse_mask(o.coalition, c.K);
        const auto det = o.model == "mud-mmse" ? coopnet::Detector::MMSE
                                               : coopnet::Detector::Decorrelator;
        const coopnet::NtuPointGame game = coopnet::mud_game(c, det);
        const auto& pay = game.payoffs(s);
        for (std::size_t i = 0; i < pay.size(); ++i) std::cout << (i ? "," : "") << pay[i];
        std::cout << "\n";
    } else {
        throw coopnet::SchemaError("unknown model \"" + o.model + "\"");
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// core and cohesive

struct TuOpts {
    std::string scenario, model, grand_value = "baseline";
};

coopnet::TuGame build_tu_game(const LoadedInput& in, const TuOpts& o, bool baseline_grand) {
    if (in.game) return *in.game;
    if (o.model.empty())
        throw coopnet::SchemaError("--model is required for channel scenarios "
                                   "(rx-joint, tx-perfect, single-receiver-mac)");
    const coopnet::Scenario& sc = *in.scenario;
    if (o.model == "rx-joint") return coopnet::rx_joint_game(need_ic(sc, o.model));
    if (o.model == "single-receiver-mac")
        return coopnet::single_receiver_mac_game(cdma_snrs(need_cdma(sc, o.model)));
    if (o.model == "tx-perfect") {
        const auto& ic = need_ic(sc, o.model);
        const coopnet::TxGameResult r = coopnet::tx_game(ic);
        if (!r.all_converged)
            std::cerr << "warning: saddle solver unconverged on some coalition\n";
        if (!baseline_grand) return r.game;
        // benchmark reading: optimized coalition demands versus the grand
        // value of non-cooperative full-power white signaling
        std::vector<double> v(std::size_t{1} << ic.K, 0.0);
        for (Coalition s = 1; s <= r.game.grand(); ++s) v[s] = r.game.value(s);
        v[r.game.grand()] = coopnet::value_full_power_baseline(ic, r.game.grand());
        return coopnet::TuGame(ic.K, std::move(v));
    }
    throw coopnet::SchemaError("model \"" + o.model + "\" does not define a TU game");
}

int run_core(const TuOpts& o) {
    const LoadedInput in = load_input(o.scenario);
    const coopnet::TuGame game = build_tu_game(in, o, o.grand_value == "baseline");
    const coopnet::CoreResult r = coopnet::core_feasible(game);
    std::cout << std::fixed << std::setprecision(6);
    if (r.status == coopnet::CoreStatus::NonEmpty) {
        std::cout << "core: NonEmpty\nwitness: (";
        const auto& x = *r.witness_point;
        for (std::size_t k = 0; k < x.size(); ++k) std::cout << (k ? ", " : "") << x[k];
        std::cout << ")\n";
        return kExitOk;
    }
    std::cout << "core: Empty\nbalanced family certificate:\n";
    for (const auto& [s, beta] : r.certificate->weights)
        std::cout << "  beta=" << beta << "  v(" << coopnet::coalition_to_string(s)
                  << ")=" << game.value(s) << "\n";
    std::cout << "family value " << r.certificate->family_value << " > grand value "
              << r.certificate->grand_value << "\n";
    return kExitNegative;
}

int run_cohesive(const TuOpts& o) {
    const LoadedInput in = load_input(o.scenario);
    // cohesiveness is a property of the fully optimized game
    const coopnet::TuGame game = build_tu_game(in, o, /*baseline_grand=*/false);
    const coopnet::CohesivenessResult r = coopnet::is_cohesive_tu(game);
    std::cout << std::fixed << std::setprecision(6);
    if (r.holds) {
        std::cout << "cohesive: yes (grand value " << game.value(game.grand())
                  << " covers every partition)\n";
        return kExitOk;
    }
    double sum = 0.0;
    for (Coalition b : r.witness) sum += game.value(b);
    std::cout << "cohesive: no\nblocking partition: " << coopnet::structure_to_string(r.witness)
              << " (sum " << sum << " > grand " << game.value(game.grand()) << ")\n";
    return kExitNegative;
}

// ---------------------------------------------------------------------------
// mud-stability

struct MudOpts {
    std::string scenario, detector;
};

int run_mud_stability(const MudOpts& o) {
    const LoadedInput in = load_input(o.scenario);
    if (!in.scenario) throw coopnet::SchemaError("mud-stability needs a cdma scenario");
    const auto& c = need_cdma(*in.scenario, "mud-" + o.detector);
    const coopnet::Detector det = coopnet::detector_from_string(o.detector);
    const coopnet::NtuPointGame game = coopnet::mud_game(c, det);
    const coopnet::NtuStabilityResult st = coopnet::ntu_gc_stable(game);

    std::cout << std::fixed << std::setprecision(6);
    if (st.stable) {
        std::cout << "grand coalition: stable (" << o.detector << ")\nmember rates: (";
        const auto& pay = game.payoffs(game.grand());
        for (std::size_t i = 0; i < pay.size(); ++i) std::cout << (i ? ", " : "") << pay[i];
        std::cout << ")\n";
        return kExitOk;
    }
    std::cout << "grand coalition: blocked by " << coopnet::coalition_to_string(st.blocking)
              << " (" << o.detector << ")\n";
    for (std::size_t k : coopnet::members(st.blocking))
        std::cout << "  user " << k << ": rate " << game.payoff_of(st.blocking, k)
                  << " > grand rate " << game.payoff_of(game.grand(), k) << "\n";
    return kExitNegative;
}

// ---------------------------------------------------------------------------
// stability-map

struct Axis {
    std::size_t user = 0;
    std::vector<double> linear;  // per-step linear SNR
    std::vector<double> db;      // the same steps in dB (CSV column)
};

/// Axis syntax: snr[<user>]=<start>:<stop>:<steps>[:dB]. One step pins the
/// axis at <start>.
Axis parse_axis(const std::string& text, std::size_t k) {
    const auto fail = [&](const std::string& why) {
        throw coopnet::SchemaError("axis \"" + text + "\": " + why +
                                   " (expected snr[<user>]=<start>:<stop>:<steps>[:dB])");
    };
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) fail("missing '='");
    const std::string path = text.substr(0, eq);
    if (path.rfind("snr[", 0) != 0 || path.back() != ']') fail("unknown parameter path");
    Axis ax;
    try {
        ax.user = std::stoul(path.substr(4, path.size() - 5));
    } catch (const std::exception&) {
        fail("bad user index");
    }
    if (ax.user >= k) fail("user index outside the scenario");

    std::vector<std::string> parts;
    std::stringstream ss(text.substr(eq + 1));
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    bool db_scale = false;
    if (!parts.empty() && (parts.back() == "dB" || parts.back() == "db")) {
        db_scale = true;
        parts.pop_back();
    }
    if (parts.size() != 3) fail("need start:stop:steps");
    double start = 0.0, stop = 0.0;
    std::size_t steps = 0;
    try {
        start = std::stod(parts[0]);
        stop = std::stod(parts[1]);
        steps = std::stoul(parts[2]);
    } catch (const std::exception&) {
        fail("non-numeric bounds");
    }
    if (steps < 1) fail("steps must be >= 1");
    if (steps > 1 && start == stop) fail("start and stop coincide");
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = steps == 1 ? start
                                    : start + (stop - start) * static_cast<double>(i) /
                                                  static_cast<double>(steps - 1);
        if (db_scale) {
            ax.db.push_back(t);
            ax.linear.push_back(std::pow(10.0, t / 10.0));
        } else {
            if (!(t > 0.0)) fail("linear SNR values must be positive");
            ax.db.push_back(10.0 * std::log10(t));
            ax.linear.push_back(t);
        }
    }
    return ax;
}

struct MapOpts {
    std::string scenario, out;
    std::vector<std::string> axes;
    std::size_t jobs = 0;
};

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
        const std::size_t lo = n * j / jobs, hi = n * (j + 1) / jobs;
        pool.emplace_back([&, j, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

int run_stability_map(const MapOpts& o) {
    const LoadedInput in = load_input(o.scenario);
    if (!in.scenario) throw coopnet::SchemaError("stability-map needs a cdma scenario");
    const auto& c = need_cdma(*in.scenario, "single-receiver-mac");
    if (o.axes.size() != 2) throw coopnet::SchemaError("stability-map needs exactly two --axis");
    const Axis a = parse_axis(o.axes[0], c.K);
    const Axis b = parse_axis(o.axes[1], c.K);
    if (a.user == b.user) throw coopnet::SchemaError("the two axes sweep the same user");

    const std::vector<double> base = cdma_snrs(c);
    const std::size_t rows = a.linear.size() * b.linear.size();
    std::vector<std::string> cells(rows);
    const std::size_t jobs =
        o.jobs ? o.jobs : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    parallel_for(rows, jobs, [&](std::size_t i) {
        const std::size_t ia = i / b.linear.size(), ib = i % b.linear.size();
        std::vector<double> snrs = base;
        snrs[a.user] = a.linear[ia];
        snrs[b.user] = b.linear[ib];
        const auto stable =
            coopnet::equal_split_stable_structures(coopnet::single_receiver_mac_game(snrs));
        std::string cell;
        for (std::size_t s = 0; s < stable.size(); ++s)
            cell += (s ? ";" : "") + coopnet::structure_to_string(stable[s]);
        cells[i] = std::move(cell);
    });

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw coopnet::ParseError("cannot write " + o.out);
        os = &file;
    }
    const auto letter = [](std::size_t user) { return static_cast<char>('A' + user); };
    *os << "SNR_" << letter(a.user) << "_dB,SNR_" << letter(b.user) << "_dB,stable_structures\n";
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t ia = i / b.linear.size(), ib = i % b.linear.size();
        *os << a.db[ia] << ',' << b.db[ib] << ",\"" << cells[i] << "\"\n";
    }
    if (!o.out.empty()) std::cout << "# wrote " << o.out << " (" << rows << " rows)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// pdf-region

struct PdfOpts {
    std::string scenario, out = "pdf_region";
    std::vector<std::string> coalitions;
    std::size_t grid = 40, weights = 64, jobs = 0;
};

int run_pdf_region(const PdfOpts& o) {
    const LoadedInput in = load_input(o.scenario);
    if (!in.scenario) throw coopnet::SchemaError("pdf-region needs a clustered scenario");
    const auto* mac = std::get_if<coopnet::ClusteredMac>(&*in.scenario);
    if (!mac) throw coopnet::SchemaError("pdf-region needs a clustered scenario");
    coopnet::validate(*mac);

    std::vector<Coalition> masks;
    for (const std::string& text : o.coalitions) masks.push_back(parse_mask(text, mac->K));
    if (masks.empty()) throw coopnet::SchemaError("pdf-region needs at least one --coalition");
    const Coalition grand = coopnet::grand_coalition(mac->K);
    if (masks.size() == 1 && masks[0] != grand) masks.push_back(grand);
    if (masks.size() > 2) throw coopnet::SchemaError("pdf-region compares at most two coalitions");

    coopnet::RegionConfig cfg;
    cfg.weight_directions = o.weights;
    cfg.jobs = o.jobs ? o.jobs : std::max<std::size_t>(1, std::thread::hardware_concurrency());

    const auto file_ids = [&](Coalition s) {
        std::string ids;
        for (std::size_t m : coopnet::members(s)) ids += std::to_string(m + 1);
        return ids;
    };
    std::vector<coopnet::RateRegionSamples> regions;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (i && masks[i] == masks[0]) {
            regions.push_back(regions[0]);  // self-comparison: reuse
            break;
        }
        regions.push_back(coopnet::pdf_rate_region(*mac, masks[i], o.grid, cfg));
        const std::string path = o.out + "_" + file_ids(masks[i]) + ".csv";
        std::ofstream f(path);
        if (!f) throw coopnet::ParseError("cannot write " + path);
        f << coopnet::region_to_csv(regions.back());
        std::cout << "# wrote " << path << "\n";
        if (regions.back().grid_too_coarse)
            std::cout << "# note: adjacent boundary samples of " << user_label(masks[i], mac->K)
                      << " are > 5% apart; raise --weights (and --grid) for smoother plots\n";
    }
    if (masks.size() == 1) return kExitOk;  // grand region emitted, nothing to compare

    // project onto the smaller coalition's plane; demand nesting
    std::size_t small = 0, big = 1;
    if (coopnet::coalition_size(masks[small]) > coopnet::coalition_size(masks[big]))
        std::swap(small, big);
    if ((masks[small] & masks[big]) != masks[small])
        throw coopnet::SchemaError("compared coalitions must be nested");
    const std::vector<std::size_t> dims = coopnet::members(masks[small]);

    if (masks[small] != masks[big]) {
        const std::string path = o.out + "_" + file_ids(masks[big]) + "_projected.csv";
        std::ofstream f(path);
        if (!f) throw coopnet::ParseError("cannot write " + path);
        std::ostringstream head;
        for (std::size_t i = 0; i < dims.size(); ++i) head << (i ? "," : "") << 'R' << dims[i] + 1;
        f << head.str() << "\n" << std::setprecision(12);
        const auto& bigregion = regions[big];
        for (const auto& bs : bigregion.boundary) {
            for (std::size_t i = 0; i < dims.size(); ++i) {
                const auto it =
                    std::find(bigregion.members.begin(), bigregion.members.end(), dims[i]);
                f << (i ? "," : "")
                  << bs.rates[static_cast<std::size_t>(it - bigregion.members.begin())];
            }
            f << "\n";
        }
        std::cout << "# wrote " << path << "\n";
    }

    const coopnet::RegionContainment small_holds_big =
        coopnet::region_contains(regions[small], regions[big], dims);
    const coopnet::RegionContainment big_holds_small =
        coopnet::region_contains(regions[big], regions[small], dims);
    const std::string sl = user_label(masks[small], mac->K);
    const std::string bl = user_label(masks[big], mac->K) +
                           (masks[small] == masks[big] ? " region" : " projection");
    if (small_holds_big.contained && !big_holds_small.contained) {
        std::cout << sl << " region contains " << bl << ": game NOT cohesive\n";
        return kExitNegative;
    }
    if (small_holds_big.contained && big_holds_small.contained) {
        std::cout << sl << " region and " << bl << " coincide: contained both ways\n";
        return kExitOk;
    }
    if (big_holds_small.contained) {
        std::cout << bl << " contains " << sl
                  << " region: containment consistent with cohesiveness\n";
        return kExitOk;
    }
    std::cout << sl << " region and " << bl << " overlap without containment\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify-examples

int run_verify(const coopnet::VerifyOptions& opt) {
    return coopnet::report_acceptance(coopnet::run_acceptance(opt), std::cout, opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coalition-game analysis of cooperating wireless links"};
    app.require_subcommand(1);

    ValueOpts value_opts;
    CLI::App* value = app.add_subcommand("value", "coalition value or member payoffs in bits");
    value->add_option("--scenario", value_opts.scenario, "scenario or TU-game JSON file")
        ->required();
    value->add_option("--model", value_opts.model,
                      "rx-joint | tx-perfect | single-receiver-mac | mud-mmse | mud-decorrelator");
    value->add_option("--coalition", value_opts.coalition, "coalition mask (0b.., 0x.., decimal)")
        ->required();

    TuOpts core_opts;
    CLI::App* core = app.add_subcommand("core", "TU core feasibility (exit 10 when empty)");
    core->add_option("--scenario", core_opts.scenario, "scenario or TU-game JSON file")->required();
    core->add_option("--model", core_opts.model, "rx-joint | tx-perfect | single-receiver-mac");
    core->add_option("--grand-value", core_opts.grand_value,
                     "tx-perfect grand value: baseline (non-cooperative white signaling) or "
                     "optimized")
        ->check(CLI::IsMember({"baseline", "optimized"}));

    TuOpts cohesive_opts;
    CLI::App* cohesive =
        app.add_subcommand("cohesive", "TU cohesiveness over all partitions (exit 10 when violated)");
    cohesive->add_option("--scenario", cohesive_opts.scenario, "scenario or TU-game JSON file")
        ->required();
    cohesive->add_option("--model", cohesive_opts.model,
                         "rx-joint | tx-perfect | single-receiver-mac");

    MudOpts mud_opts;
    CLI::App* mud = app.add_subcommand(
        "mud-stability", "grand-coalition stability under a linear detector (exit 10 when blocked)");
    mud->add_option("--scenario", mud_opts.scenario, "cdma scenario file")->required();
    mud->add_option("--detector", mud_opts.detector, "mmse | decorrelator")
        ->required()
        ->check(CLI::IsMember({"mmse", "decorrelator"}));

    MapOpts map_opts;
    CLI::App* map = app.add_subcommand(
        "stability-map", "equal-split stable structures over a two-axis SNR sweep (CSV)");
    map->add_option("--scenario", map_opts.scenario, "cdma scenario file")->required();
    map->add_option("--axis", map_opts.axes, "snr[<user>]=<start>:<stop>:<steps>[:dB] (twice)")
        ->expected(1, 2);
    map->add_option("--out", map_opts.out, "CSV path (default: stdout)");
    map->add_option("--jobs", map_opts.jobs, "worker threads (default: available parallelism)");

    PdfOpts pdf_opts;
    CLI::App* pdf = app.add_subcommand(
        "pdf-region",
        "clustered-uplink rate regions and containment verdict (exit 10 when not cohesive)");
    pdf->add_option("--scenario", pdf_opts.scenario, "clustered scenario file")->required();
    pdf->add_option("--coalition", pdf_opts.coalitions,
                    "coalition mask; twice to compare, once to compare against the grand coalition")
        ->expected(1, 2);
    pdf->add_option("--grid", pdf_opts.grid, "power-split grid points per member axis");
    pdf->add_option("--weights", pdf_opts.weights, "boundary weight directions");
    pdf->add_option("--jobs", pdf_opts.jobs, "worker threads (default: available parallelism)");
    pdf->add_option("--out", pdf_opts.out, "CSV path prefix");

    coopnet::VerifyOptions verify_opts;
    verify_opts.fixture_dir = COOPNET_FIXTURE_DIR;
    CLI::App* verify =
        app.add_subcommand("verify-examples", "run the acceptance suite (exit 0 iff all pass)");
    verify->add_option("--filter", verify_opts.filter, "run only criteria containing this substring");
    verify->add_option("--seed", verify_opts.seed, "master seed of the randomized suites (printed)");
    verify->add_option("--fixtures", verify_opts.fixture_dir, "directory of the shipped scenarios");
    verify->add_option("--map-out", verify_opts.map_out,
                       "stability-map artifact path (empty to skip)");

    int rc = kExitOk;
    value->callback([&] { rc = run_value(value_opts); });
    core->callback([&] { rc = run_core(core_opts); });
    cohesive->callback([&] { rc = run_cohesive(cohesive_opts); });
    mud->callback([&] { rc = run_mud_stability(mud_opts); });
    map->callback([&] { rc = run_stability_map(map_opts); });
    pdf->callback([&] { rc = run_pdf_region(pdf_opts); });
    verify->callback([&] { rc = run_verify(verify_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
