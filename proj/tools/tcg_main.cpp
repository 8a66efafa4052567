#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tcg/autom.hpp"
#include "tcg/constructor.hpp"
#include "tcg/counting.hpp"
#include "tcg/nilgroup.hpp"
#include "tcg/numtheory.hpp"
#include "tcg/serial.hpp"
#include "tcg/twisted.hpp"
#include "tcg/ztlinalg.hpp"

namespace {

using namespace tcg;

// File-based inputs and numeric knobs for one subcommand invocation.
struct RunConfig {
  std::string spec_path, aut_path, out_path, csv_path;
  std::string maps_text, grid_text;
  std::string g_text, h_text;
  int radius = 0;
  std::size_t l = 0;  // 0 = number of maps
  bool force = false;
};

constexpr int kRadiusCap = 25;
constexpr long long kGcdSumCapUniform = 1000000;
constexpr long long kGcdSumCapAffine = 10000;  // nested enumeration beyond d = 1
constexpr long long kTotientCap = 2000000;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const RunConfig& rc, const std::string& text) {
  if (rc.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(rc.out_path);
  require(out.good(), "cannot open " + rc.out_path);
  out << text;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GroupSpec load_spec(const RunConfig& rc) {
  require(!rc.spec_path.empty(), "--spec is required");
  return spec_from_json(read_file(rc.spec_path));
}

Automorphism load_aut(const RunConfig& rc, const GroupSpec& s) {
  require(!rc.aut_path.empty(), "--aut is required");
  return automorphism_from_json(s, read_file(rc.aut_path));
}

std::vector<long long> parse_ll_list(const std::string& text, const std::string& what) {
  std::vector<long long> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      require(used == tok.size(), what + ": bad integer \"" + tok + "\"");
    } catch (const std::logic_error&) {
      fail(what + ": bad integer \"" + tok + "\"");
    }
  }
  require(!out.empty(), what + ": empty list");
  return out;
}

std::vector<AffineMap> parse_maps(const std::string& text) {
  std::vector<AffineMap> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t colon = tok.find(':');
    require(colon != std::string::npos, "--maps entries look like slope:offset");
    AffineMap m;
    try {
      m.slope = std::stoll(tok.substr(0, colon));
      m.offset = std::stoll(tok.substr(colon + 1));
    } catch (const std::logic_error&) {
      fail("--maps: bad integer in \"" + tok + "\"");
    }
    out.push_back(m);
  }
  require(!out.empty(), "--maps: empty list");
  return out;
}

// Net polynomial class: the linear and quadratic factors fold into the
// exponent, the log factor stays symbolic.
std::string growth_class_string(const InvariantReport& rep) {
  switch (rep.growth_factor) {
    case GrowthFactor::log:
      return "n^" + std::to_string(rep.growth_exponent) + "·log(n)";
    case GrowthFactor::linear:
      return "n^" + std::to_string(rep.growth_exponent + 1);
    case GrowthFactor::quadratic:
      return "n^" + std::to_string(rep.growth_exponent + 2);
    case GrowthFactor::one:
      break;
  }
  return "n^" + std::to_string(rep.growth_exponent);
}

void cmd_classify(const RunConfig& rc) {
  GroupSpec s = load_spec(rc);
  Automorphism psi = load_aut(rc, s);
  InvariantReport rep = invariants(s, psi);
  std::ostringstream out;
  out << "d_c = " << rep.d_c << "\nr_c = " << rep.r_c << "\nd_z = " << rep.d_z
      << "\nr_z = " << rep.r_z << "\nd_zc = " << rep.d_zc << "\nr_zc = " << rep.r_zc
      << "\nfrak_d = " << rep.frak_d << "\ndegenerate = " << (rep.degenerate ? "yes" : "no")
      << "\ngrowth_factor = " << growth_factor_name(rep.growth_factor)
      << "\ngrowth = " << growth_class_string(rep) << "\n";
  write_output(rc, out.str());
}

void cmd_decide(const RunConfig& rc) {
  GroupSpec s = load_spec(rc);
  Automorphism psi = load_aut(rc, s);
  Element g = element_from_string(s, rc.g_text);
  Element h = element_from_string(s, rc.h_text);
  auto [same, witness] = is_twisted_conjugate(s, psi, g, h);
  if (!same) {
    write_output(rc, "not-conjugate\n");
    return;
  }
  require(witness.has_value() && twisted_conjugate(s, psi, *witness, g) == h,
          "internal: witness fails to conjugate g to h");
  write_output(rc, "conjugate\nwitness = " + element_to_string(*witness) + "\n");
}

GrowthTable computed_table(const RunConfig& rc, const GroupSpec& s, const Automorphism& psi) {
  require(rc.radius >= 1, "--radius must be at least 1");
  require(rc.force || rc.radius <= kRadiusCap,
          "--radius capped at " + std::to_string(kRadiusCap) + " (override with --force)");
  return growth_table(s, psi, default_genset(s), rc.radius);
}

void cmd_count(const RunConfig& rc) {
  GroupSpec s = load_spec(rc);
  Automorphism psi = load_aut(rc, s);
  write_output(rc, growth_table_csv(computed_table(rc, s, psi)));
}

GrowthTable table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "csv: empty input");
  require(line == "n,classes,ball" || line == "n,classes",
          "csv: expected header n,classes[,ball]");
  GrowthTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<long long> cells = parse_ll_list(line, "csv");
    require(cells.size() == 2 || cells.size() == 3, "csv: rows carry 2 or 3 cells");
    require(cells[0] > 0 && cells[1] >= 0, "csv: n must be positive and counts nonnegative");
    GrowthRow row;
    row.n = static_cast<int>(cells[0]);
    row.classes = static_cast<std::size_t>(cells[1]);
    row.ball = cells.size() == 3 ? static_cast<std::size_t>(cells[2]) : 0;
    table.rows.push_back(row);
  }
  require(!table.rows.empty(), "csv: no data rows");
  return table;
}

void cmd_fit(const RunConfig& rc) {
  std::vector<FitCandidate> candidates;
  for (int e = 0; e <= 6; ++e)
    for (bool log_factor : {false, true})
      candidates.push_back({static_cast<double>(e), log_factor});

  std::ostringstream out;
  if (!rc.csv_path.empty()) {
    require(rc.spec_path.empty() && rc.aut_path.empty(),
            "fit takes either a csv file or --spec/--aut, not both");
    FitResult fit = fit_growth(table_from_csv(read_file(rc.csv_path)), candidates);
    out << "selected: e=" << fit.exponent_estimate << " log=" << (fit.log_factor ? "yes" : "no")
        << " residual=" << fmt_double(fit.residual) << "\n";
  } else {
    GroupSpec s = load_spec(rc);
    Automorphism psi = load_aut(rc, s);
    FitResult fit = fit_growth(computed_table(rc, s, psi), candidates);
    auto [e, log_factor] = fit_model(invariants(s, psi));
    bool agree =
        fit.exponent_estimate == static_cast<double>(e) && fit.log_factor == log_factor;
    out << "selected: e=" << fit.exponent_estimate << " log=" << (fit.log_factor ? "yes" : "no")
        << " residual=" << fmt_double(fit.residual) << "\n"
        << "classify: e=" << e << " log=" << (log_factor ? "yes" : "no") << "\n"
        << "agreement: " << (agree ? "yes" : "no") << "\n";
  }
  write_output(rc, out.str());
}

void cmd_gcdsum(const RunConfig& rc) {
  std::vector<AffineMap> maps = parse_maps(rc.maps_text);
  std::size_t l = rc.l == 0 ? maps.size() : rc.l;
  std::vector<long long> grid = parse_ll_list(rc.grid_text, "--grid");
  long long cap = maps.size() == 1 ? kGcdSumCapUniform : kGcdSumCapAffine;
  std::vector<std::pair<long long, Int>> values;
  for (long long n : grid) {
    require(n >= 0, "--grid entries must be nonnegative");
    require(rc.force || n <= cap,
            "--grid capped at " + std::to_string(cap) + " for this map count (--force overrides)");
    values.emplace_back(n, gcd_sum(maps, l, n));
  }
  if (values.size() >= 3) {
    write_output(rc, ratio_csv(ratio_diagnostics(values, l, maps.size())));
    return;
  }
  std::ostringstream out;
  out << "N,value\n";
  for (const auto& [n, v] : values) out << n << "," << v.str() << "\n";
  write_output(rc, out.str());
}

void cmd_totient(const RunConfig& rc) {
  std::vector<long long> grid = parse_ll_list(rc.grid_text, "--grid");
  long long top = 0;
  for (long long n : grid) {
    require(n >= 1, "--grid entries must be at least 1");
    require(rc.force || n <= kTotientCap,
            "--grid capped at " + std::to_string(kTotientCap) + " (override with --force)");
    top = std::max(top, n);
  }
  std::vector<long long> phi = totient_sieve(static_cast<std::size_t>(top));
  std::vector<long long> sum(phi.size());
  for (std::size_t i = 1; i < phi.size(); ++i) sum[i] = sum[i - 1] + phi[i];
  std::ostringstream out;
  out << "N,phi,sum,asymptotic,ratio\n";
  const double pi = 3.14159265358979323846;
  for (long long n : grid) {
    double asym = 3.0 * static_cast<double>(n) * static_cast<double>(n) / (pi * pi);
    out << n << "," << phi[n] << "," << sum[n] << "," << fmt_double(asym) << ","
        << fmt_double(static_cast<double>(sum[n]) / asym) << "\n";
  }
  write_output(rc, out.str());
}

void cmd_construct_log(const RunConfig& rc) {
  const std::string& path = !rc.csv_path.empty() ? rc.csv_path : rc.spec_path;
  require(!path.empty(), "construct-log needs a spec path (positional or --spec)");
  GroupSpec s = spec_from_json(read_file(path));
  Automorphism psi = build_log_automorphism(s);
  write_output(rc, automorphism_to_json(psi) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted conjugacy growth in generalised Heisenberg groups"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_spec_aut = [&](CLI::App* sub) {
    sub->add_option("--spec", rc.spec_path, "group spec JSON file");
    sub->add_option("--aut", rc.aut_path, "automorphism JSON file");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out,-o", rc.out_path, "write output to this file instead of stdout");
  };

  CLI::App* classify = app.add_subcommand("classify", "invariants and the growth class");
  add_spec_aut(classify);
  add_out(classify);
  classify->callback([&] { cmd_classify(rc); });

  CLI::App* decide = app.add_subcommand("decide", "decide twisted conjugacy of two elements");
  decide->set_help_flag("--help", "print help");  // frees the name "h" below
  add_spec_aut(decide);
  add_out(decide);
  decide->add_option("g", rc.g_text, "first element, a1,…,ak,c")->required();
  decide->add_option("h", rc.h_text, "second element, a1,…,ak,c")->required();
  decide->callback([&] { cmd_decide(rc); });

  CLI::App* count = app.add_subcommand("count", "class counts per radius as CSV");
  add_spec_aut(count);
  add_out(count);
  count->add_option("--radius", rc.radius, "largest ball radius")->required();
  count->add_flag("--force", rc.force, "override the radius cap");
  count->callback([&] { cmd_count(rc); });

  CLI::App* fit = app.add_subcommand("fit", "fit a growth model to class counts");
  add_spec_aut(fit);
  add_out(fit);
  fit->add_option("csv", rc.csv_path, "existing n,classes[,ball] CSV instead of counting");
  fit->add_option("--radius", rc.radius, "largest ball radius when counting");
  fit->add_flag("--force", rc.force, "override the radius cap");
  fit->callback([&] { cmd_fit(rc); });

  CLI::App* gcdsum = app.add_subcommand("gcdsum", "gcd sums over affine maps as CSV");
  gcdsum->add_option("--maps", rc.maps_text, "slope:offset, comma separated")->required();
  gcdsum->add_option("--l", rc.l, "rank of the summation box (default: map count)");
  gcdsum->add_option("--grid", rc.grid_text, "box radii, comma separated")->required();
  gcdsum->add_flag("--force", rc.force, "override the radius caps");
  add_out(gcdsum);
  gcdsum->callback([&] { cmd_gcdsum(rc); });

  CLI::App* totient = app.add_subcommand("totient", "totient values and partial sums as CSV");
  totient->add_option("--grid", rc.grid_text, "evaluation points, comma separated")->required();
  totient->add_flag("--force", rc.force, "override the size cap");
  add_out(totient);
  totient->callback([&] { cmd_totient(rc); });

  CLI::App* construct = app.add_subcommand("construct-log", "build the log-growth automorphism");
  construct->add_option("spec_file", rc.csv_path, "group spec JSON file");
  construct->add_option("--spec", rc.spec_path, "group spec JSON file");
  add_out(construct);
  construct->callback([&] { cmd_construct_log(rc); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
