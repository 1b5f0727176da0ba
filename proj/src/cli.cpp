#include "twocenter/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "twocenter/error.hpp"
#include "twocenter/io.hpp"

namespace twocenter::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    double m1 = 0.5;
    double m2 = 0.5;
    double h = -0.23;
    std::optional<double> g;
    std::optional<std::string> w;
    std::string region;
    std::string torus = "first";
    std::string grid = "-1.5:1.5:61,-1.5:-0.05:30";
    std::string theta;
    std::string w_list = "1,2,3,1/2,2/3,3/2,5/2";
    int phases = 8;
    std::uint64_t seed = 1;
    int max_len = 12;
    std::string out_path;
    std::string format;

    Params params() const { return Params::make(m1, m2, h); }
    TorusSelector selector() const
    {
        if (torus == "first" || torus == "1") return TorusSelector::First;
        if (torus == "second" || torus == "2") return TorusSelector::Second;
        throw UsageError("--torus must be first or second");
    }
};

void add_masses(CLI::App* sub, Config& c)
{
    sub->add_option("--m1", c.m1, "mass at (-1,0)")->capture_default_str();
    sub->add_option("--m2", c.m2, "mass at (1,0)")->capture_default_str();
    sub->add_option("--h", c.h, "energy (< 0)")->capture_default_str();
    sub->add_option("--format", c.format, "text, json, csv or svg");
    sub->add_option("--out", c.out_path, "output file");
}

void add_torus(CLI::App* sub, Config& c)
{
    auto* g = sub->add_option("--g", c.g, "separation constant");
    auto* w = sub->add_option("--W", c.w, "rotation number p/q");
    g->excludes(w);
    sub->add_option("--region", c.region, "S, Sprime, L or P (needed with --W)");
    sub->add_option("--torus", c.torus, "first or second")->capture_default_str();
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    return out;
}

double to_double(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

periods::GridAxis axis(const std::string& spec)
{
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw UsageError("grid axis must be lo:hi:n, got '" + spec + "'");
    periods::GridAxis a{to_double(parts[0]), to_double(parts[1]), static_cast<int>(to_double(parts[2]))};
    if (a.n < 2) throw UsageError("grid resolution must be >= 2");
    return a;
}

Rational parse_w(const std::string& s)
{
    try {
        return Rational::parse(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Region parse_region_arg(const std::string& s)
{
    try {
        const Region r = parse_region(s);
        if (r == Region::Critical || r == Region::Empty) throw std::invalid_argument("not a torus region");
        return r;
    } catch (const std::invalid_argument&) {
        throw UsageError("--region must be S, Sprime, L or P");
    }
}

struct Resolved {
    double g;
    std::optional<Rational> w;
};

Resolved resolve(const Config& c, const Params& p)
{
    if (c.g) {
        const TorusData t = periods::rotation_number(*c.g, p);
        return {*c.g, orbits::as_rational(t.W)};
    }
    if (!c.w) throw UsageError("one of --g or --W is required");
    if (c.region.empty()) throw UsageError("--W needs --region");
    const Rational w = parse_w(*c.w);
    return {periods::solve_g(parse_region_arg(c.region), w.value(), p).g, w};
}

// Writes to --out when given, else to the console stream.
template <class F>
void emit(const Config& c, std::ostream& console, F&& write)
{
    if (c.out_path.empty()) {
        write(console);
        return;
    }
    std::ofstream f(c.out_path);
    if (!f) throw std::runtime_error("cannot open " + c.out_path);
    write(f);
}

bool json(const Config& c) { return c.format == "json"; }

int cmd_classify(const Config& c, std::ostream& out)
{
    const Params p = c.params();
    const RegionType r = emmap::classify(*c.g, p);
    const CriticalData cd = emmap::critical_data(p);
    const auto bounds = emmap::region_boundaries(p);
    if (json(c)) {
        nlohmann::json b = nlohmann::json::array();
        for (const auto& x : bounds) b.push_back({{"g", x.g}, {"curve", x.label}});
        emit(c, out, [&](std::ostream& os) {
            os << nlohmann::json{{"g", *c.g}, {"h", p.h}, {"region", r}, {"critical", cd}, {"boundaries", b}}.dump(2) << '\n';
        });
        return kOk;
    }
    emit(c, out, [&](std::ostream& os) {
        os << "region " << to_string(r.tag) << "\ntorus_count " << r.torus_count << '\n';
        const nlohmann::json j = cd;
        for (const auto& [k, v] : j.items()) os << k << ' ' << io::number(v.get<double>()) << '\n';
        os << "boundaries\n";
        for (const auto& x : bounds) os << "  " << io::number(x.g) << ' ' << x.label << '\n';
    });
    return kOk;
}

int cmd_atlas(const Config& c, std::ostream& out)
{
    const auto parts = split(c.grid, ',');
    if (parts.size() != 2) throw UsageError("--grid must be g0:g1:n,h0:h1:n");
    const auto g_axis = axis(parts[0]);
    const auto h_axis = axis(parts[1]);
    if (std::max(h_axis.lo, h_axis.hi) >= 0.0) throw UsageError("grid must stay in h < 0");
    const auto rows = periods::atlas(c.m1, c.m2, g_axis, h_axis);
    emit(c, out, [&](std::ostream& os) { io::write_atlas_csv(os, rows); });
    return kOk;
}

int cmd_periods(const Config& c, std::ostream& out)
{
    const Params p = c.params();
    const Resolved r = resolve(c, p);
    const TorusData t = periods::rotation_number(r.g, p);
    const ModulusData m = periods::modulus_data(r.g, p);
    const auto w = periods::window_phases(r.g, p, c.selector());
    nlohmann::json j = {{"torus", t}, {"moduli", m}, {"windows", w}};
    if (json(c)) {
        emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        return kOk;
    }
    emit(c, out, [&](std::ostream& os) {
        os << "region " << to_string(t.region.tag) << "\ng " << io::number(t.g) << "\nh " << io::number(t.h)
           << "\nT_lambda " << io::number(t.T_lambda) << ' ' << to_string(t.lambda_branch) << "\nT_nu "
           << io::number(t.T_nu) << ' ' << to_string(t.nu_branch) << "\nW " << io::number(t.W) << '\n';
        for (const auto& x : w.vertical) os << "window " << x.symbol << ' ' << io::number(x.phase) << '\n';
        for (const auto& x : w.horizontal) os << "window " << x.symbol << ' ' << io::number(x.phase) << '\n';
    });
    return kOk;
}

int cmd_word(const Config& c, std::ostream& out)
{
    const Params p = c.params();
    const Resolved r = resolve(c, p);
    if (!r.w) throw UsageError("rotation number at this g is not a small rational");
    const auto pred = orbits::predict(r.g, *r.w, p, c.selector());
    if (json(c)) {
        emit(c, out, [&](std::ostream& os) {
            os << nlohmann::json{{"g", r.g},
                                 {"W", r.w->str()},
                                 {"word", pred.word.canonical().str()},
                                 {"theorem_word", pred.theorem_word.canonical().str()},
                                 {"half_spaced", pred.half_spaced},
                                 {"agrees", pred.agrees}}
                      .dump(2)
               << '\n';
        });
        return kOk;
    }
    emit(c, out, [&](std::ostream& os) { os << pred.word.canonical().str() << '\n'; });
    return kOk;
}

int cmd_orbit(const Config& c, std::ostream& out)
{
    const Params p = c.params();
    const Resolved r = resolve(c, p);
    if (!r.w) throw UsageError("rotation number at this g is not a small rational");
    orbits::OrbitSpec spec;
    spec.g = r.g;
    spec.w = r.w;
    spec.selector = c.selector();
    if (!c.theta.empty()) {
        const auto parts = split(c.theta, ',');
        if (parts.size() != 2) throw UsageError("--theta must be theta_nu,theta_lambda");
        spec.theta_nu = to_double(parts[0]);
        spec.theta_lambda = to_double(parts[1]);
    } else {
        // Start on the torus line furthest from every collision.
        spec.theta_lambda = orbits::predict(r.g, *r.w, p, spec.selector).intercept;
    }
    const auto po = orbits::periodic_orbit(spec, p);
    out << orbits::syzygy_word(po.trajectory).canonical().str() << '\n';
    if (!c.out_path.empty()) {
        std::string fmt = c.format;
        if (fmt.empty()) fmt = c.out_path.ends_with(".svg") ? "svg" : c.out_path.ends_with(".json") ? "json" : "csv";
        std::ofstream f(c.out_path);
        if (!f) throw std::runtime_error("cannot open " + c.out_path);
        if (fmt == "svg") io::write_trajectory_svg(f, po.trajectory);
        else if (fmt == "json") f << io::trajectory_json(po.trajectory).dump(1) << '\n';
        else if (fmt == "csv") io::write_trajectory_csv(f, po.trajectory);
        else throw UsageError("--format must be csv, svg or json");
    }
    return kOk;
}

int cmd_collision(const Config& c, std::ostream& out)
{
    const Params p = c.params();
    const Resolved r = resolve(c, p);
    const auto runs = orbits::collision_orbits(r.g, p, c.selector());
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : runs) {
        j.push_back({{"word", orbits::syzygy_word(t).str()},
                     {"tau", t.samples.back().tau},
                     {"t", t.samples.back().t},
                     {"residual", t.collision_residual}});
    }
    emit(c, out, [&](std::ostream& os) {
        if (json(c)) {
            os << nlohmann::json{{"g", r.g}, {"orbits", j}}.dump(2) << '\n';
            return;
        }
        os << "orbits " << runs.size() << '\n';
        for (const auto& x : j) {
            os << x["word"].get<std::string>() << " tau " << io::number(x["tau"].get<double>()) << " residual "
               << io::number(x["residual"].get<double>()) << '\n';
        }
    });
    return kOk;
}

int cmd_verify(const Config& c, std::ostream& out)
{
    const Params p = c.params();
    std::vector<Rational> ws;
    for (const auto& s : split(c.w_list, ',')) ws.push_back(parse_w(s));
    if (c.phases < 1) throw UsageError("--phases must be >= 1");
    const auto report = orbits::verify_theorems(p, ws, c.phases, c.seed);
    const auto j = io::report_json(report);
    emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    if (!c.out_path.empty()) {
        std::size_t passed = 0;
        for (const auto& x : report.cases) passed += x.pass ? 1 : 0;
        out << (report.all_pass ? "PASS " : "FAIL ") << passed << '/' << report.cases.size() << '\n';
    }
    return report.all_pass ? kOk : kFailure;
}

int cmd_enumerate(const Config& c, std::ostream& out)
{
    const auto words = sturmian::enumerate_syzygy_words(c.max_len);
    emit(c, out, [&](std::ostream& os) {
        if (json(c)) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& w : words) a.push_back(w.str());
            os << nlohmann::json{{"max_len", c.max_len}, {"count", words.size()}, {"words", a}}.dump(2) << '\n';
            return;
        }
        for (const auto& w : words) os << w.str() << '\n';
        os << "count " << words.size() << '\n';
    });
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Syzygy sequences of the two-centre problem"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Config c;

    auto* classify = app.add_subcommand("classify", "region of (g, h)");
    add_masses(classify, c);
    classify->add_option("--g", c.g, "separation constant")->required();

    auto* atlas = app.add_subcommand("atlas", "CSV grid of regions, periods and W");
    add_masses(atlas, c);
    atlas->add_option("--grid", c.grid, "g0:g1:n,h0:h1:n")->capture_default_str();

    auto* per = app.add_subcommand("periods", "periods, rotation number and window phases");
    add_masses(per, c);
    add_torus(per, c);

    auto* word = app.add_subcommand("word", "predicted syzygy word of a rational torus");
    add_masses(word, c);
    add_torus(word, c);

    auto* orbit = app.add_subcommand("orbit", "integrate a periodic orbit and print its word");
    add_masses(orbit, c);
    add_torus(orbit, c);
    orbit->add_option("--theta", c.theta, "starting angles theta_nu,theta_lambda");

    auto* coll = app.add_subcommand("collision", "collision-collision orbits of a rational torus");
    add_masses(coll, c);
    add_torus(coll, c);

    auto* verify = app.add_subcommand("verify", "check integrated words against the predictions");
    add_masses(verify, c);
    verify->add_option("--W", c.w_list, "comma separated rotation numbers")->capture_default_str();
    verify->add_option("--phases", c.phases, "random phases per torus")->capture_default_str();
    verify->add_option("--seed", c.seed, "phase RNG seed")->capture_default_str();

    auto* enumerate = app.add_subcommand("enumerate", "all syzygy words up to a length");
    add_masses(enumerate, c);
    enumerate->add_option("--max-len", c.max_len, "maximal word length")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify) return cmd_classify(c, out);
        if (*atlas) return cmd_atlas(c, out);
        if (*per) return cmd_periods(c, out);
        if (*word) return cmd_word(c, out);
        if (*orbit) return cmd_orbit(c, out);
        if (*coll) return cmd_collision(c, out);
        if (*verify) return cmd_verify(c, out);
        if (*enumerate) return cmd_enumerate(c, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace twocenter::cli
