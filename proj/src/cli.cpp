#include "subgauss/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "subgauss/charfn.hpp"
#include "subgauss/construct.hpp"
#include "subgauss/error.hpp"
#include "subgauss/periodic.hpp"
#include "subgauss/quartic.hpp"
#include "subgauss/renyi.hpp"
#include "subgauss/spec.hpp"
#include "subgauss/verify.hpp"

namespace subgauss::cli {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

// JSON numbers carry the same 12 significant digits as the CSV output.
json num(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return std::strtod(format_number(x).c_str(), nullptr);
}

json params_json(const QuarticParams& p) {
  return {{"alpha", num(p.alpha)}, {"beta", num(p.beta)}, {"gamma", num(p.gamma)}};
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot write '" + path.string() + "'");
  return f;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw Error(ErrorCode::ConfigInvalid, "output directory '" + dir + "' is not writable");
}

std::vector<double> parse_alphas(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) {
    if (s == "inf" || s == "infinity") {
      out.push_back(kAlphaInfinity);
      continue;
    }
    try {
      std::size_t used = 0;
      const double a = std::stod(s, &used);
      if (used != s.size() || !(a > 0.0)) throw std::invalid_argument(s);
      out.push_back(a);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigInvalid, "bad alpha '" + s + "'");
    }
  }
  return out;
}

struct Source {
  std::string spec;
  std::string fixture;
  std::string density;

  void add_to(CLI::App* app) {
    auto* a = app->add_option("--spec", spec, "distribution spec (JSON)")->check(CLI::ExistingFile);
    auto* b = app->add_option("--fixture", fixture, "fixture name from the built-in corpus");
    auto* c = app->add_option("--density", density, "density samples (CSV with header x,p)")->check(CLI::ExistingFile);
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }
  bool given() const { return !spec.empty() || !fixture.empty() || !density.empty(); }

  LoadedSpec load() const {
    if (!spec.empty()) return load_spec_file(spec);
    if (!fixture.empty()) {
      auto s = load_spec(find_fixture(fixture).spec);
      s.name = fixture;
      return s;
    }
    if (!density.empty()) return load_spec(json{{"kind", "density"}, {"csv", density}, {"name", density}});
    throw Error(ErrorCode::ConfigInvalid, "one of --spec, --fixture, --density is required");
  }
};

int lattice_divisor(const PeriodicComponent& p) {
  int g = 0;
  for (std::size_t k = 0; k < p.a.size(); ++k)
    if (p.a[k] != 0.0) g = std::gcd(g, static_cast<int>(k + 1));
  for (std::size_t k = 0; k < p.b.size(); ++k)
    if (p.b[k] != 0.0) g = std::gcd(g, static_cast<int>(k + 1));
  return g == 0 ? 1 : g;
}

json report_json(const SubgaussReport& r) {
  json sep = json::array();
  for (const auto& [t0, c] : r.separation) sep.push_back({{"t0", num(t0)}, {"c", num(c)}});
  return {{"subject", r.subject},
          {"variance", num(r.variance)},
          {"proxy_variance", num(r.proxy_variance)},
          {"strict", r.strict},
          {"separation", sep},
          {"concave_sqrt_K", r.concave_sqrt_K},
          {"worst_t", num(r.worst_t)},
          {"t_cap", num(r.t_cap)},
          {"sup_at_cap", r.sup_at_cap}};
}

// Translates {"command": ..., "key": value, ...} into argument form so that the
// same option parser validates config files.
std::vector<std::string> config_args(const std::string& path) {
  const json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("command") || !j.at("command").is_string())
    throw Error(ErrorCode::ConfigInvalid, "config needs a string 'command'");
  std::vector<std::string> args{j.at("command").get<std::string>()};
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    auto scalar = [&](const json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) return format_number(v.get<double>());
      throw Error(ErrorCode::ConfigInvalid, "config value of '" + key + "' must be a string or number");
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + scalar(v);
      args.insert(args.end(), {flag, joined});
    } else {
      args.insert(args.end(), {flag, scalar(value)});
    }
  }
  return args;
}

int dispatch(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strictly subgaussian distributions: classification, construction, verification", "subgauss"};
  app.footer("Options may also come from a JSON file: subgauss --config FILE (keys: command, then option names).");
  app.require_subcommand(1);

  // classify
  QuarticParams qp;
  auto* classify = app.add_subcommand("classify", "classify the quartic family exp(-g t^2/2)(1 - a t^2 + b t^4)");
  classify->add_option("--alpha", qp.alpha)->required();
  classify->add_option("--beta", qp.beta)->required();
  classify->add_option("--gamma", qp.gamma)->check(CLI::PositiveNumber);

  // build
  std::string zeros_path, out_path;
  double lambda = 0.0;
  auto* build = app.add_subcommand("build", "build an independent sum with prescribed complex zeros");
  build->add_option("--zeros", zeros_path, "zero set JSON")->required()->check(CLI::ExistingFile);
  build->add_option("--lambda", lambda, "variance multiplier")->required();
  build->add_option("--out", out_path, "CSV output (default: stdout)");

  // periodic
  int sin_power = 0;
  double theta_sigma = 0.0;
  std::string coeffs_path, c_value = "auto", periodic_out;
  auto* periodic = app.add_subcommand("periodic", "periodic-class density and lattice identity");
  auto* o_sin = periodic->add_option("--sin-power", sin_power, "P(t) = sin^m t")->check(CLI::Range(3, 64));
  auto* o_theta = periodic->add_option("--theta-sigma", theta_sigma, "P(t) = sin^4(t) Q(t), Gaussian window");
  auto* o_coeffs = periodic->add_option("--coeffs", coeffs_path, "JSON {a0, a, b, period}")->check(CLI::ExistingFile);
  o_sin->excludes(o_theta)->excludes(o_coeffs);
  o_theta->excludes(o_coeffs);
  periodic->add_option("--c", c_value, "amplitude, or auto for c_max / 2");
  periodic->add_option("--out", periodic_out, "directory for density.csv");

  // verify
  Source verify_src;
  double t_cap = kDefaultTCap;
  std::vector<double> t0s{0.5, 1.0, 2.0};
  double v_alpha = std::nan(""), v_beta = std::nan(""), v_gamma = 1.0;
  auto* verify = app.add_subcommand("verify", "proxy variance, strictness verdict, separation constants");
  verify_src.add_to(verify);
  verify->add_option("--alpha", v_alpha, "quartic alpha (instead of a spec)");
  verify->add_option("--beta", v_beta, "quartic beta");
  verify->add_option("--gamma", v_gamma)->check(CLI::PositiveNumber);
  verify->add_option("--t-cap", t_cap)->check(CLI::PositiveNumber);
  verify->add_option("--t0", t0s, "separation points")->delimiter(',')->check(CLI::PositiveNumber);

  // clt
  Source clt_src;
  std::vector<int> ns{4, 8, 16, 32, 64, 128, 256, 512};
  std::vector<std::string> alpha_items{"1", "2", "inf"};
  std::string clt_out = ".";
  auto* clt = app.add_subcommand("clt", "Renyi divergences of normalized sums to the normal law");
  clt_src.add_to(clt);
  clt->add_option("--n", ns)->delimiter(',')->check(CLI::PositiveNumber);
  clt->add_option("--alpha", alpha_items)->delimiter(',');
  clt->add_option("--out", clt_out, "directory for clt.csv and rates.json");

  // fixtures
  bool list = false;
  std::string show, write_dir;
  auto* fixtures = app.add_subcommand("fixtures", "the built-in example corpus");
  fixtures->add_flag("--list", list);
  fixtures->add_option("--show", show, "print one fixture as JSON");
  fixtures->add_option("--write", write_dir, "write every fixture to DIR/<name>.json");

  std::vector<std::string> args(raw.rbegin(), raw.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
  }

  if (*classify) {
    const auto r = classify_quartic(qp);
    json j{{"input", params_json(r.input)},
           {"normalized", params_json(r.normalized)},
           {"characteristic", r.characteristic},
           {"strict", r.strict},
           {"binding_constraint", r.binding_constraint},
           {"boundary_distance", num(r.boundary_distance)}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  if (*build) {
    const auto z = parse_zero_set(parse_json_file(zeros_path));
    const auto built = build_from_zero_set(z.zeros, lambda);
    std::ostringstream csv;
    csv << "n,re_z,im_z,gamma_n,var_n\n";
    const auto& comps = built.distribution.components;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      csv << (i + 1) << ',' << format_number(comps[i].zero.real()) << ',' << format_number(comps[i].zero.imag())
          << ',' << format_number(comps[i].gamma) << ',' << format_number(comps[i].variance()) << '\n';
    }
    if (out_path.empty()) {
      out << csv.str();
    } else {
      open_out(out_path) << csv.str();
      out << json{{"components", comps.size()},
                  {"lambda", num(built.distribution.lambda)},
                  {"total_variance", num(built.distribution.total_variance)},
                  {"csv", out_path}}
                 .dump(2)
          << '\n';
    }
    return kExitOk;
  }

  if (*periodic) {
    PeriodicComponent p;
    std::string family;
    if (sin_power != 0) {
      p = sin_power_fourier(sin_power);
      family = "sin_power";
    } else if (theta_sigma != 0.0) {
      p = theta_component(ThetaComponent{theta_sigma});
      family = "theta";
    } else if (!coeffs_path.empty()) {
      p = parse_periodic_coeffs(parse_json_file(coeffs_path));
      family = "coeffs";
    } else {
      throw Error(ErrorCode::ConfigInvalid, "one of --sin-power, --theta-sigma, --coeffs is required");
    }
    const double cmax = max_admissible_c(p);
    if (c_value == "auto") {
      p.c = 0.5 * cmax;
    } else {
      try {
        std::size_t used = 0;
        p.c = std::stod(c_value, &used);
        if (used != c_value.size()) throw std::invalid_argument(c_value);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigInvalid, "--c must be a number or auto");
      }
    }
    const auto td = trig_density(p, p.c);
    const double h = p.period / lattice_divisor(p);
    const auto lattice = lattice_identity_check(td.handle, h, 2);
    const auto mc = moment_constraints(p);
    json dev = json::array();
    for (double d : lattice.deviations) dev.push_back(num(d));
    json j{{"family", family},
           {"c_max", num(cmax)},
           {"c", num(p.c)},
           {"lattice_period", num(h)},
           {"moment_constraints",
            {{"value_at_zero", num(mc.value_at_zero)},
             {"first", num(mc.first)},
             {"second", num(mc.second)},
             {"hold", mc.hold}}},
           {"lattice_deviations", dev},
           {"periodicity_defect", num(lattice.periodicity_defect)},
           {"laplace_check", num(td.laplace_check)},
           {"mass", num(td.density.mass())},
           {"mean", num(td.density.mean())},
           {"variance", num(td.density.variance())}};
    if (!periodic_out.empty()) {
      ensure_dir(periodic_out);
      auto f = open_out(std::filesystem::path(periodic_out) / "density.csv");
      write_density_csv(f, td.density);
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  if (*verify) {
    LoadedSpec s;
    const bool quartic = !std::isnan(v_alpha) || !std::isnan(v_beta);
    if (quartic) {
      if (std::isnan(v_alpha) || std::isnan(v_beta) || verify_src.given())
        throw Error(ErrorCode::ConfigInvalid, "quartic verify needs --alpha and --beta and no other source");
      s = load_spec(json{{"kind", "quartic"}, {"alpha", v_alpha}, {"beta", v_beta}, {"gamma", v_gamma}});
    } else {
      s = verify_src.load();
    }
    const auto r = verify_handle(s.handle, t0s, t_cap);
    json j = report_json(r);
    j["name"] = s.name;
    j["non_strict_expected"] = s.non_strict;
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  if (*clt) {
    const auto s = clt_src.load();
    const auto alphas = parse_alphas(alpha_items);
    ensure_dir(clt_out);
    const GriddedDensity d = spec_density(s, true);
    const auto res = clt_experiment(d, ns, alphas);

    std::ostringstream csv;
    csv << "n,alpha,D,T_inf\n";
    for (const auto& r : res.reports)
      csv << r.n << ',' << format_number(r.alpha) << ',' << format_number(r.D_alpha) << ','
          << format_number(r.T_inf) << '\n';
    open_out(std::filesystem::path(clt_out) / "clt.csv") << csv.str();

    json t = json::array();
    for (std::size_t i = 0; i < ns.size(); ++i) t.push_back({{"n", ns[i]}, {"T_inf", num(res.t_inf[i])}});
    json rates{{"subject", s.name},
               {"grid_points", d.size()},
               {"regressor", "log((log n)^3 / n)"},
               {"min_n", 16},
               {"slope", num(res.fit.slope)},
               {"intercept", num(res.fit.intercept)},
               {"r_squared", num(res.fit.r_squared)},
               {"points", res.fit.points},
               {"t_inf_decreasing", res.fit.t_inf_decreasing},
               {"t_inf", t}};
    open_out(std::filesystem::path(clt_out) / "rates.json") << rates.dump(2) << '\n';
    out << csv.str();
    return kExitOk;
  }

  if (*fixtures) {
    if (!list && show.empty() && write_dir.empty())
      throw Error(ErrorCode::ConfigInvalid, "fixtures needs --list, --show or --write");
    if (list)
      for (const auto& f : fixture_registry()) out << f.name << '\n';
    if (!show.empty()) out << find_fixture(show).spec.dump(2) << '\n';
    if (!write_dir.empty()) {
      ensure_dir(write_dir);
      for (const auto& f : fixture_registry())
        open_out(std::filesystem::path(write_dir) / (f.name + ".json")) << f.spec.dump(2) << '\n';
    }
    return kExitOk;
  }
  return kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.size() == 2 && args[0] == "--config") return dispatch(config_args(args[1]), out, err);
    return dispatch(args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_validation() ? kExitValidation : kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace subgauss::cli
