#include "clamped_te/cli.hpp"

#include "clamped_te/bie.hpp"
#include "clamped_te/disk.hpp"
#include "clamped_te/parallel.hpp"
#include "clamped_te/recover.hpp"
#include "clamped_te/scatter.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#ifndef CLAMPED_TE_VERSION
#define CLAMPED_TE_VERSION "unknown"
#endif

namespace clamped_te::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct ShapeFlags {
    std::string shape = "circle";
    double a = 1.0;
    double b = 1.0;
    double eps = 0.1;
    double r = 1.0;

    BoundaryCurve curve() const {
        CurveParams p;
        p.a = a;
        p.b = b;
        p.eps = eps;
        p.radius = r;
        return BoundaryCurve::make(curve_kind_from_string(shape), p);
    }
};

struct Common {
    std::string output;
    std::string format = "csv";
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

void add_shape(CLI::App* app, ShapeFlags& s) {
    app->add_option("--shape", s.shape, "circle|disk|ellipse|deformed|peanut")->capture_default_str();
    app->add_option("--a", s.a, "ellipse x half-axis")->capture_default_str();
    app->add_option("--b", s.b, "ellipse y half-axis")->capture_default_str();
    app->add_option("--eps", s.eps, "deformed ellipse parameter")->capture_default_str();
    app->add_option("--r", s.r, "circle radius")->capture_default_str();
}

void add_common(CLI::App* app, Common& c, bool with_format) {
    app->add_option("--output,-o", c.output, "output file (default: stdout)");
    if (with_format)
        app->add_option("--format", c.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    app->add_option("--seed", c.seed, "random seed")->capture_default_str();
    app->add_option("--threads", c.threads, "worker cap (0: all cores)")->capture_default_str();
}

fs::path resolve(const std::string& path) {
    fs::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = fs::path(dir) / p;
    }
    return p;
}

// Writes to the --output file when one is given, else to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path.empty() || path == "-") return;
        const fs::path p = resolve(path);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        file_ = std::make_unique<std::ofstream>(p);
        if (!*file_) throw InvalidArgument("cannot open output file " + p.string());
        os_ = file_.get();
        path_ = p;
    }
    std::ostream& os() { return *os_; }
    const fs::path& path() const { return path_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
    fs::path path_;
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

json metadata(const std::string& command, const json& params) {
    return json{{"command", command}, {"version", CLAMPED_TE_VERSION}, {"parameters", params}};
}

json complex_array(const CVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
    return a;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

// ---- disk-roots ------------------------------------------------------------

struct DiskRootsArgs {
    Common c;
    int ell_max = 2;
    double kmin = 1.0;
    double kmax = 5.0;
    double tol = 1e-12;
};

int do_disk_roots(const DiskRootsArgs& a, std::ostream& out) {
    const auto roots = disk::te_roots(a.ell_max, a.kmin, a.kmax, a.tol);
    Sink sink(a.c.output, out);
    if (a.c.format == "json") {
        json rows = json::array();
        for (const auto& r : roots)
            rows.push_back({{"ell", r.ell}, {"k", r.k}, {"multiplicity", r.multiplicity},
                            {"value", std::abs(disk::determinant(r.ell, r.k))}});
        json j = metadata("disk-roots", {{"ell_max", a.ell_max}, {"kmin", a.kmin}, {"kmax", a.kmax}, {"tol", a.tol}});
        j["roots"] = rows;
        sink.os() << j.dump(1) << '\n';
    } else {
        sink.os() << "ell,k,multiplicity,value\n";
        for (const auto& r : roots)
            sink.os() << r.ell << ',' << fmt(r.k) << ',' << r.multiplicity << ','
                      << fmt(std::abs(disk::determinant(r.ell, r.k))) << '\n';
    }
    return kExitOk;
}

// ---- disk-imag-scan --------------------------------------------------------

struct ImagScanArgs {
    Common c;
    int ell_max = 5;
    double smin = 0.05;
    double smax = 5.0;
    double step = 1e-3;
};

int do_imag_scan(const ImagScanArgs& a, std::ostream& out) {
    require(a.smin > 0.0 && a.smax >= a.smin, "need 0 < smin <= smax");
    require(a.step > 0.0, "step must be positive");
    const int count = static_cast<int>(std::floor((a.smax - a.smin) / a.step + 1e-9)) + 1;
    std::vector<double> s(count);
    for (int i = 0; i < count; ++i) s[i] = a.smin + a.step * i;
    Sink sink(a.c.output, out);
    if (a.c.format == "json") {
        json j = metadata("disk-imag-scan", {{"ell_max", a.ell_max}, {"smin", a.smin}, {"smax", a.smax}, {"step", a.step}});
        j["s"] = s;
        for (int l = 0; l <= a.ell_max; ++l) j["abs_f"][std::to_string(l)] = disk::imag_axis_scan(l, s);
        sink.os() << j.dump(1) << '\n';
    } else {
        sink.os() << "ell,s,value\n";
        for (int l = 0; l <= a.ell_max; ++l) {
            const auto v = disk::imag_axis_scan(l, s);
            for (int i = 0; i < count; ++i) sink.os() << l << ',' << fmt(s[i]) << ',' << fmt(v[i]) << '\n';
        }
    }
    return kExitOk;
}

// ---- eig -------------------------------------------------------------------

struct EigArgs {
    Common c;
    ShapeFlags shape;
    EigenSearchOptions opt;
    double kmin = 1.0;
    double kmax = 5.0;
    bool with_density = false;
};

int do_eig(EigArgs a, std::ostream& out, std::ostream& err) {
    a.opt.contour.rng_seed = a.c.seed;
    const BoundaryCurve curve = a.shape.curve();
    const auto pairs = transmission_eigenvalues(curve, a.kmin, a.kmax, a.opt);
    Sink sink(a.c.output, out);
    if (a.c.format == "json") {
        json rows = json::array();
        for (const auto& p : pairs) {
            json r{{"k", p.k.real()}, {"k_imag", p.k.imag()}, {"residual", p.residual}, {"group", p.group_id}};
            if (a.with_density) r["density"] = complex_array(p.v);
            rows.push_back(std::move(r));
        }
        json j = metadata("eig", {{"shape", curve.describe()},
                                  {"nodes", a.opt.nodes},
                                  {"kmin", a.kmin},
                                  {"kmax", a.kmax},
                                  {"radius", a.opt.radius},
                                  {"overlap", a.opt.overlap},
                                  {"n_quad", a.opt.contour.n_quad},
                                  {"n_probe", a.opt.contour.n_probe},
                                  {"seed", a.c.seed}});
        j["eigenpairs"] = rows;
        sink.os() << j.dump(1) << '\n';
    } else {
        sink.os() << "index,k,k_imag,residual,group\n";
        for (std::size_t i = 0; i < pairs.size(); ++i)
            sink.os() << i << ',' << fmt(pairs[i].k.real()) << ',' << fmt(pairs[i].k.imag()) << ','
                      << fmt(pairs[i].residual) << ',' << pairs[i].group_id << '\n';
    }
    if (pairs.empty()) err << "no eigenvalues found in [" << a.kmin << ", " << a.kmax << "]\n";
    return kExitOk;
}

// ---- eigfun ----------------------------------------------------------------

struct EigfunArgs {
    Common c;
    ShapeFlags shape;
    int nodes = 120;
    double k = 0.0;
    double window = 0.05;
    int member = 0;
    int grid = 101;
    double extent = 0.0;
};

int do_eigfun(const EigfunArgs& a, std::ostream& out, std::ostream& err) {
    require(a.k > 0.0, "--k (approximate eigenvalue) is required and must be positive");
    require(a.grid >= 2, "--grid must be at least 2");
    require(a.window > 0.0 && a.window < a.k, "--window must lie in (0, k)");
    const BoundaryCurve curve = a.shape.curve();
    const NepOperator op(make_grid(curve, a.nodes));
    ContourSpec c;
    c.center = a.k;
    c.radius = a.window;
    c.rng_seed = a.c.seed;
    auto pairs = beyn_solve(op.as_problem(), c);
    if (pairs.empty()) {
        err << "no eigenvalue within " << a.window << " of k = " << a.k << '\n';
        return kExitNumerical;
    }
    std::sort(pairs.begin(), pairs.end(), [&](const NepEigenpair& x, const NepEigenpair& y) {
        return std::abs(x.k - a.k) < std::abs(y.k - a.k);
    });
    require(a.member >= 0 && a.member < static_cast<int>(pairs.size()), "--member exceeds the number of eigenpairs");
    const NepEigenpair& p = pairs[a.member];
    const double kk = p.k.real();
    err << "eigenvalue " << std::setprecision(10) << kk << " (residual " << p.residual << ")\n";

    double ext = a.extent;
    if (!(ext > 0.0)) {
        ext = 0.0;
        for (const Vec2& q : op.grid().points) ext = std::max({ext, std::abs(q.x), std::abs(q.y)});
        ext *= 1.5;
    }
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(a.grid) * a.grid);
    for (int iy = 0; iy < a.grid; ++iy)
        for (int ix = 0; ix < a.grid; ++ix)
            pts.push_back({-ext + 2.0 * ext * ix / (a.grid - 1), -ext + 2.0 * ext * iy / (a.grid - 1)});
    const auto field = eigenfunction_field(op.grid(), kk, p.v, pts);

    Sink sink(a.c.output, out);
    if (a.c.format == "json") {
        json rows = json::array();
        for (const auto& f : field)
            rows.push_back({f.point.x, f.point.y, f.too_close ? json(nullptr) : json(f.value.real()),
                            f.too_close ? json(nullptr) : json(f.value.imag()), f.inside});
        json j = metadata("eigfun", {{"shape", curve.describe()}, {"nodes", a.nodes}, {"k", kk}, {"grid", a.grid},
                                     {"extent", ext}, {"seed", a.c.seed}});
        j["columns"] = {"x", "y", "re", "im", "inside"};
        j["samples"] = rows;
        sink.os() << j.dump(1) << '\n';
    } else {
        sink.os() << "x,y,re,im,inside\n";
        for (const auto& f : field) {
            sink.os() << fmt(f.point.x) << ',' << fmt(f.point.y) << ',';
            if (f.too_close)
                sink.os() << "nan,nan,";
            else
                sink.os() << fmt(f.value.real()) << ',' << fmt(f.value.imag()) << ',';
            sink.os() << (f.inside ? 1 : 0) << '\n';
        }
    }
    return kExitOk;
}

// ---- farfield --------------------------------------------------------------

struct FarfieldArgs {
    Common c;
    ShapeFlags shape;
    std::vector<double> k;
    double kmin = 1.0;
    double kmax = 5.0;
    int nk = 0;
    int n_dir = 64;
    int nodes = 120;
    double delta = 0.0;
};

std::string farfield_filename(double k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "farfield_k%.6f.json", k);
    return buf;
}

int do_farfield(const FarfieldArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<double> ks = a.k;
    if (ks.empty()) {
        require(a.nk >= 2, "give --k or --nk >= 2 with --kmin/--kmax");
        ks = linspace(a.kmin, a.kmax, a.nk);
    }
    const BoundaryCurve curve = a.shape.curve();
    if (ks.size() == 1 && (a.c.output.empty() || a.c.output == "-" || a.c.output.ends_with(".json"))) {
        Sink sink(a.c.output, out);
        write_farfield(sink.os(), add_noise(farfield_matrix(curve, ks[0], a.n_dir, a.nodes), a.delta, a.c.seed));
        return kExitOk;
    }
    // Several wavenumbers: one file per k in the output directory.
    fs::path dir = resolve(a.c.output.empty() ? "." : a.c.output);
    fs::create_directories(dir);
    std::vector<std::string> errors(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) {
        try {
            const FarFieldMatrix f = add_noise(farfield_matrix(curve, ks[i], a.n_dir, a.nodes), a.delta, a.c.seed);
            std::ofstream os(dir / farfield_filename(ks[i]));
            write_farfield(os, f);
        } catch (const ConditioningError& e) {
            errors[i] = e.what();
        }
    });
    int failed = 0;
    for (const auto& e : errors)
        if (!e.empty()) {
            err << "skipped: " << e << '\n';
            ++failed;
        }
    err << "wrote " << ks.size() - failed << " far-field files to " << dir.string() << '\n';
    return kExitOk;
}

// ---- recover ---------------------------------------------------------------

struct RecoverArgs {
    Common c;
    ShapeFlags shape;
    std::vector<std::string> inputs;
    double kmin = 1.0;
    double kmax = 5.0;
    int nk = 150;
    int nz = 20;
    int n_dir = 64;
    int nodes = 120;
    double delta = 0.02;
    double peak_factor = 1.5;
    std::string peaks_path;
};

json peak_report(const RecoverySweep& s, const json& params) {
    json j = metadata("recover", params);
    json peaks = json::array();
    for (const auto& p : s.peaks)
        peaks.push_back({{"k_est", p.k}, {"grid_k", s.k_grid[p.index]}, {"prominence", p.prominence}});
    j["peaks"] = peaks;
    return j;
}

int do_recover(const RecoverArgs& a, std::ostream& out, std::ostream& err) {
    const BoundaryCurve curve = a.shape.curve();
    RecoverySweep s;
    json params{{"shape", curve.describe()}, {"nz", a.nz}, {"seed", a.c.seed}, {"peak_factor", a.peak_factor}};
    if (!a.inputs.empty()) {
        std::vector<FarFieldMatrix> data;
        for (const auto& path : a.inputs) {
            std::ifstream is(path);
            require(static_cast<bool>(is), "cannot open " + path);
            data.push_back(read_farfield(is));
        }
        std::sort(data.begin(), data.end(), [](const auto& x, const auto& y) { return x.k < y.k; });
        s = sweep_from_data(data, sample_interior_points(curve, a.nz, a.c.seed), a.peak_factor);
        params["inputs"] = a.inputs.size();
        params["delta"] = s.delta;
    } else {
        require(a.nk >= 3, "--nk must be at least 3");
        SweepOptions o;
        o.n_z = a.nz;
        o.n_dir = a.n_dir;
        o.n_nodes = a.nodes;
        o.seed = a.c.seed;
        o.peak_factor = a.peak_factor;
        s = sweep(curve, linspace(a.kmin, a.kmax, a.nk), a.delta, o);
        params.update({{"kmin", a.kmin}, {"kmax", a.kmax}, {"nk", a.nk}, {"n_dir", a.n_dir}, {"nodes", a.nodes},
                       {"delta", a.delta}});
    }
    for (std::size_t i = 0; i < s.k_grid.size(); ++i)
        if (s.missing[i]) err << "k = " << s.k_grid[i] << ": forward solve failed, value missing\n";

    const json report = peak_report(s, params);
    Sink sink(a.c.output, out);
    if (a.c.format == "json") {
        json j = report;
        json curve_rows = json::array();
        for (std::size_t i = 0; i < s.k_grid.size(); ++i)
            curve_rows.push_back({s.k_grid[i], s.missing[i] ? json(nullptr) : json(s.g_norm_avg[i])});
        j["curve"] = curve_rows;
        sink.os() << j.dump(1) << '\n';
    } else {
        sink.os() << "k,g_norm_avg\n";
        for (std::size_t i = 0; i < s.k_grid.size(); ++i)
            sink.os() << fmt(s.k_grid[i]) << ',' << (s.missing[i] ? std::string("nan") : fmt(s.g_norm_avg[i])) << '\n';
        std::string pp = a.peaks_path;
        if (pp.empty() && !sink.path().empty()) pp = (sink.path().parent_path() / sink.path().stem()).string() + "_peaks.json";
        if (pp.empty()) {
            err << report.dump(1) << '\n';
        } else {
            Sink ps(pp, err);
            ps.os() << report.dump(1) << '\n';
        }
    }
    return kExitOk;
}

// ---- validate --------------------------------------------------------------

struct ValidateArgs {
    Common c;
    int nodes = 120;
};

int do_validate(const ValidateArgs& a, std::ostream& out) {
    struct Row {
        std::string name;
        double value;
        std::string bound;
        bool ok;
    };
    std::vector<Row> rows;
    const std::array<double, 3> table{1.6146349995639885158, 3.0516335028155405705, 4.3645169097857215923};

    const auto roots = disk::te_roots(2, 1.0, 5.0);
    double root_err = 0.0;
    for (double t : table) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : roots) best = std::min(best, std::abs(r.k - t));
        root_err = std::max(root_err, best);
    }
    rows.push_back({"determinant roots vs reference", root_err, "< 1e-9", root_err < 1e-9});

    EigenSearchOptions opt;
    opt.nodes = a.nodes;
    opt.contour.rng_seed = a.c.seed;
    const auto pairs = transmission_eigenvalues(BoundaryCurve::circle(1.0), 1.0, 5.0, opt);
    double bem_err = 0.0;
    for (const auto& r : roots) {
        int matched = 0;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pairs) {
            const double d = std::abs(p.k - cplx{r.k, 0.0});
            best = std::min(best, d);
            if (d < 5e-5) ++matched;
        }
        bem_err = std::max(bem_err, matched == r.multiplicity ? best : std::numeric_limits<double>::infinity());
    }
    if (pairs.size() != [&] {
            std::size_t n = 0;
            for (const auto& r : roots) n += r.multiplicity;
            return n;
        }())
        bem_err = std::numeric_limits<double>::infinity();
    rows.push_back({"BEM eigenvalues vs determinant roots", bem_err, "< 5e-5", bem_err < 5e-5});

    const double k = 2.0;
    const FarFieldMatrix f = farfield_matrix(BoundaryCurve::circle(1.0), k, 64, a.nodes);
    const auto lam = disk::lambda_table(k, 0);
    double ff_err = 0.0;
    for (int i = 0; i < f.n_dir; ++i)
        for (int j = 0; j < f.n_dir; ++j) {
            const cplx ref = disk::farfield_from_table(lam, 2.0 * std::numbers::pi * i / f.n_dir,
                                                       2.0 * std::numbers::pi * j / f.n_dir)
                                 .value;
            ff_err = std::max(ff_err, std::abs(f.entries(i, j) - ref) / std::abs(ref));
        }
    rows.push_back({"BEM far field vs analytic series, k=2", ff_err, "< 1e-6", ff_err < 1e-6});

    double min_f = std::numeric_limits<double>::infinity();
    std::vector<double> s;
    for (int i = 0; i <= 4950; ++i) s.push_back(0.05 + 1e-3 * i);
    for (int l = 0; l <= 5; ++l)
        for (double v : disk::imag_axis_scan(l, s)) min_f = std::min(min_f, v);
    rows.push_back({"min |f_l(is)|, s in [0.05,5], l <= 5", min_f, "> 0", min_f > 0.0});

    bool all = true;
    out << std::left << std::setw(44) << "check" << std::setw(12) << "value" << std::setw(10) << "bound"
        << "status\n";
    for (const auto& r : rows) {
        all = all && r.ok;
        out << std::setw(44) << r.name << std::setw(12) << std::setprecision(3) << std::scientific << r.value
            << std::setw(10) << r.bound << (r.ok ? "PASS" : "FAIL") << '\n';
    }
    out << std::defaultfloat;
    return all ? kExitOk : kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clamped transmission eigenvalues: boundary integrals, contour eigensolver, far-field recovery"};
    app.set_version_flag("--version", CLAMPED_TE_VERSION);
    app.require_subcommand(1);

    DiskRootsArgs roots;
    auto* sc_roots = app.add_subcommand("disk-roots", "real zeros of the unit-disk determinant");
    add_common(sc_roots, roots.c, true);
    sc_roots->add_option("--ell-max", roots.ell_max)->capture_default_str();
    sc_roots->add_option("--kmin", roots.kmin)->capture_default_str();
    sc_roots->add_option("--kmax", roots.kmax)->capture_default_str();
    sc_roots->add_option("--tol", roots.tol)->capture_default_str();

    ImagScanArgs scan;
    auto* sc_scan = app.add_subcommand("disk-imag-scan", "|f_l(is)| along the imaginary axis");
    add_common(sc_scan, scan.c, true);
    sc_scan->add_option("--ell-max", scan.ell_max)->capture_default_str();
    sc_scan->add_option("--smin", scan.smin)->capture_default_str();
    sc_scan->add_option("--smax", scan.smax)->capture_default_str();
    sc_scan->add_option("--step", scan.step)->capture_default_str();

    EigArgs eig;
    auto* sc_eig = app.add_subcommand("eig", "transmission eigenvalues by boundary integrals and contour integration");
    add_common(sc_eig, eig.c, true);
    add_shape(sc_eig, eig.shape);
    sc_eig->add_option("--nodes", eig.opt.nodes)->capture_default_str();
    sc_eig->add_option("--kmin", eig.kmin)->capture_default_str();
    sc_eig->add_option("--kmax", eig.kmax)->capture_default_str();
    sc_eig->add_option("--radius", eig.opt.radius, "contour radius")->capture_default_str();
    sc_eig->add_option("--overlap", eig.opt.overlap, "contour overlap along the axis")->capture_default_str();
    sc_eig->add_option("--n-quad", eig.opt.contour.n_quad)->capture_default_str();
    sc_eig->add_option("--n-probe", eig.opt.contour.n_probe)->capture_default_str();
    sc_eig->add_option("--rank-tol", eig.opt.contour.rank_tol)->capture_default_str();
    sc_eig->add_option("--res-tol", eig.opt.contour.res_tol)->capture_default_str();
    sc_eig->add_option("--check-extra", eig.opt.check_extra_nodes, "extra nodes of the confirmation grid (0: off)")
        ->capture_default_str();
    sc_eig->add_flag("--density", eig.with_density, "include boundary densities (json)");

    EigfunArgs ef;
    auto* sc_ef = app.add_subcommand("eigfun", "eigenfunction pair on a regular grid");
    add_common(sc_ef, ef.c, true);
    add_shape(sc_ef, ef.shape);
    sc_ef->add_option("--nodes", ef.nodes)->capture_default_str();
    sc_ef->add_option("--k", ef.k, "approximate eigenvalue")->required();
    sc_ef->add_option("--window", ef.window, "contour radius around --k")->capture_default_str();
    sc_ef->add_option("--member", ef.member, "which eigenpair of a multiple eigenvalue")->capture_default_str();
    sc_ef->add_option("--grid", ef.grid, "samples per axis")->capture_default_str();
    sc_ef->add_option("--extent", ef.extent, "half width of the sampled square (0: automatic)");

    FarfieldArgs ff;
    auto* sc_ff = app.add_subcommand("farfield", "multi-static far-field matrices");
    add_common(sc_ff, ff.c, false);
    add_shape(sc_ff, ff.shape);
    sc_ff->add_option("--k", ff.k, "wavenumber(s)");
    sc_ff->add_option("--kmin", ff.kmin)->capture_default_str();
    sc_ff->add_option("--kmax", ff.kmax)->capture_default_str();
    sc_ff->add_option("--nk", ff.nk, "number of equispaced k in [kmin, kmax]");
    sc_ff->add_option("--n-dir", ff.n_dir)->capture_default_str();
    sc_ff->add_option("--nodes", ff.nodes)->capture_default_str();
    sc_ff->add_option("--delta", ff.delta, "relative noise level")->capture_default_str();

    RecoverArgs rec;
    auto* sc_rec = app.add_subcommand("recover", "eigenvalue peaks from noisy far-field data");
    add_common(sc_rec, rec.c, true);
    add_shape(sc_rec, rec.shape);
    sc_rec->add_option("--input", rec.inputs, "far-field files (default: synthesise)");
    sc_rec->add_option("--kmin", rec.kmin)->capture_default_str();
    sc_rec->add_option("--kmax", rec.kmax)->capture_default_str();
    sc_rec->add_option("--nk", rec.nk)->capture_default_str();
    sc_rec->add_option("--nz", rec.nz, "interior sample points")->capture_default_str();
    sc_rec->add_option("--n-dir", rec.n_dir)->capture_default_str();
    sc_rec->add_option("--nodes", rec.nodes)->capture_default_str();
    sc_rec->add_option("--delta", rec.delta)->capture_default_str();
    sc_rec->add_option("--peak-factor", rec.peak_factor, "peak threshold as a multiple of the median")
        ->capture_default_str();
    sc_rec->add_option("--peaks", rec.peaks_path, "peak report file (csv mode)");

    ValidateArgs val;
    auto* sc_val = app.add_subcommand("validate", "unit-disk cross checks");
    add_common(sc_val, val.c, false);
    sc_val->add_option("--nodes", val.nodes)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << CLAMPED_TE_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    try {
        auto cap = [](const Common& c) { set_max_threads(c.threads); };
        if (*sc_roots) return cap(roots.c), do_disk_roots(roots, out);
        if (*sc_scan) return cap(scan.c), do_imag_scan(scan, out);
        if (*sc_eig) return cap(eig.c), do_eig(eig, out, err);
        if (*sc_ef) return cap(ef.c), do_eigfun(ef, out, err);
        if (*sc_ff) return cap(ff.c), do_farfield(ff, out, err);
        if (*sc_rec) return cap(rec.c), do_recover(rec, out, err);
        if (*sc_val) return cap(val.c), do_validate(val, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitInput;
}

}  // namespace clamped_te::cli
