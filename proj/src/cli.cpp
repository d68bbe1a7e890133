#include "vhasian/cli.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "vhasian/classical.hpp"
#include "vhasian/errors.hpp"
#include "vhasian/mc_oracle.hpp"
#include "vhasian/parallel.hpp"

namespace vhasian {

using nlohmann::json;

OutputFormat parse_output_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + name + "'");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::table: return "table";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
  }
  throw std::invalid_argument("unknown output format");
}

void CliConfig::validate() const {
  params.validate();
  (void)Kernel::from_alpha(alpha);
  quad.validate();
  if (n_steps < 2) throw std::invalid_argument("steps must be >= 2");
}

bool operator==(const CliConfig& a, const CliConfig& b) {
  const auto& qa = a.quad;
  const auto& qb = b.quad;
  return a.params == b.params && a.alpha == b.alpha && qa.lower == qb.lower &&
         qa.upper == qb.upper && qa.rule == qb.rule && qa.panels == qb.panels &&
         qa.tol == qb.tol && qa.max_evaluations == qb.max_evaluations && a.n_steps == b.n_steps &&
         a.format == b.format && a.parallel == b.parallel;
}

namespace {

const std::vector<double> kTableMaturities{0.2, 0.4, 0.5, 1.0, 1.5, 2.0, 3.0, 8.0, 12.0};
const std::vector<double> kTableStrikes{90.0, 95.0, 100.0, 105.0, 110.0};
const std::vector<double> kTableAlphas{1.0, 0.75, 0.6};

constexpr double kParityThreshold = 1e-8;
constexpr double kConsistencyThreshold = 1e-6;
// Trapezoid error of the classical path at T = 3 drops below 1e-7 here.
constexpr std::size_t kConsistencySteps = 16384;

double round4(double x) { return std::round(x * 1e4) / 1e4; }

json config_json(const CliConfig& c) {
  return {
      {"alpha", c.alpha},
      {"kappa", c.params.kappa},
      {"theta", c.params.theta},
      {"sigma", c.params.sigma},
      {"rho", c.params.rho},
      {"r", c.params.r},
      {"s0", c.params.s0},
      {"v0", c.params.v0},
      {"steps", c.n_steps},
      {"quad",
       {{"lower", c.quad.lower},
        {"upper", c.quad.upper},
        {"rule", to_string(c.quad.rule)},
        {"panels", c.quad.panels},
        {"tol", c.quad.tol},
        {"max_evaluations", c.quad.max_evaluations}}},
      {"format", to_string(c.format)},
      {"parallel", c.parallel},
  };
}

CliConfig config_from_json(const json& j) {
  CliConfig c;
  c.alpha = j.at("alpha").get<double>();
  c.params.kappa = j.at("kappa").get<double>();
  c.params.theta = j.at("theta").get<double>();
  c.params.sigma = j.at("sigma").get<double>();
  c.params.rho = j.at("rho").get<double>();
  c.params.r = j.at("r").get<double>();
  c.params.s0 = j.at("s0").get<double>();
  c.params.v0 = j.at("v0").get<double>();
  c.n_steps = j.at("steps").get<std::size_t>();
  const json& q = j.at("quad");
  c.quad.lower = q.at("lower").get<double>();
  c.quad.upper = q.at("upper").get<double>();
  c.quad.rule = parse_quadrature_rule(q.at("rule").get<std::string>());
  c.quad.panels = q.at("panels").get<int>();
  c.quad.tol = q.at("tol").get<double>();
  c.quad.max_evaluations = q.at("max_evaluations").get<std::size_t>();
  c.format = parse_output_format(j.at("format").get<std::string>());
  c.parallel = j.at("parallel").get<bool>();
  return c;
}

json record_json(const PriceRecord& r) {
  const auto& d = r.result.diagnostics;
  return {
      {"type", to_string(r.type)},
      {"T", r.T},
      {"K", r.K ? json(*r.K) : json(nullptr)},
      {"alpha", r.alpha},
      {"price", round4(r.result.price)},
      {"price_full", r.result.price},
      {"diagnostics",
       {{"quad_nodes", d.quad_nodes},
        {"riccati_steps", d.riccati_steps},
        {"upper_truncation", d.upper_truncation},
        {"psi10", {d.psi10.real(), d.psi10.imag()}},
        {"quad_error", d.quad_error},
        {"refinements", d.refinements}}},
  };
}

PriceRecord record_from_json(const json& j) {
  PriceRecord r;
  r.type = parse_option_type(j.at("type").get<std::string>());
  r.T = j.at("T").get<double>();
  if (!j.at("K").is_null()) r.K = j.at("K").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.result.price = j.at("price_full").get<double>();
  const json& d = j.at("diagnostics");
  auto& diag = r.result.diagnostics;
  diag.quad_nodes = d.at("quad_nodes").get<std::size_t>();
  diag.riccati_steps = d.at("riccati_steps").get<std::size_t>();
  diag.upper_truncation = d.at("upper_truncation").get<double>();
  diag.psi10 = cplx(d.at("psi10").at(0).get<double>(), d.at("psi10").at(1).get<double>());
  diag.quad_error = d.at("quad_error").get<double>();
  diag.refinements = d.at("refinements").get<std::size_t>();
  return r;
}

std::string fmt_fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::string fmt_num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string fmt_sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

void write_csv_row(std::ostream& out, const PriceRecord& r) {
  out << fmt_num(r.T) << ',' << (r.K ? fmt_num(*r.K) : "") << ',' << fmt_fixed(r.alpha, 2) << ','
      << to_string(r.type) << ',' << fmt_fixed(r.result.price, 4) << '\n';
}

/// Aligned text table; every column is right-aligned to its widest cell.
void write_text_table(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cells[c];
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

struct Options {
  CliConfig config;
  std::string format = "table";
  std::string rule = "adaptive";
  std::vector<double> alphas;
  bool alpha_given = false;
  bool steps_given = false;

  // price
  std::string type;
  double T = 0.0;
  std::optional<double> K;

  // table
  std::string which;
  std::vector<double> maturities = kTableMaturities;
  std::vector<double> strikes = kTableStrikes;

  // check
  std::string suite;
  std::size_t mc_paths = 100000;
  std::size_t mc_time = 512;
  std::uint64_t mc_seed = SimSpec{}.seed;
};

std::vector<double> effective_alphas(const Options& o) {
  if (o.alpha_given) return {o.config.alpha};
  const auto& a = o.alphas.empty() ? kTableAlphas : o.alphas;
  for (double x : a) (void)Kernel::from_alpha(x);
  return a;
}

int cmd_price(const Options& o, std::ostream& out) {
  const CliConfig& cfg = o.config;
  PricingRequest req;
  req.option = parse_option_type(o.type);
  req.strike = o.K;
  req.T = o.T;
  req.valuation = StatePath::at_inception(cfg.params);
  req.quad = cfg.quad;
  req.n_steps = cfg.n_steps;
  req.parallel = cfg.parallel;
  req.validate();

  PriceRecord rec{req.option, req.T, req.strike, cfg.alpha, price(req, cfg.kernel(), cfg.params)};
  switch (cfg.format) {
    case OutputFormat::csv:
      out << "T,K,alpha,type,price\n";
      write_csv_row(out, rec);
      break;
    case OutputFormat::json:
      out << to_json_text(cfg, rec) << '\n';
      break;
    case OutputFormat::table: {
      const auto& d = rec.result.diagnostics;
      std::ostringstream psi;
      psi << std::setprecision(12) << d.psi10.real() << (d.psi10.imag() < 0 ? " - " : " + ")
          << std::abs(d.psi10.imag()) << "i";
      std::vector<std::vector<std::string>> rows{
          {"type", to_string(rec.type)},
          {"alpha", fmt_fixed(rec.alpha, 2)},
          {"T", fmt_num(rec.T)},
          {"K", rec.K ? fmt_num(*rec.K) : "-"},
          {"price", fmt_fixed(rec.result.price, 4)},
          {"price_full", fmt_fixed(rec.result.price, 12)},
          {"quad_nodes", std::to_string(d.quad_nodes)},
          {"quad_error", fmt_sci(d.quad_error)},
          {"riccati_steps", std::to_string(d.riccati_steps)},
          {"refinements", std::to_string(d.refinements)},
          {"upper_truncation", fmt_num(d.upper_truncation)},
          {"psi10", psi.str()},
      };
      for (const auto& r : rows) out << std::left << std::setw(18) << r[0] << r[1] << '\n';
      out << std::right;
      break;
    }
  }
  return exit_codes::ok;
}

/// Prices the requested grid, one AsianPricer per (alpha, T).
std::vector<PriceRecord> price_grid(const Options& o, bool fixed) {
  const CliConfig& cfg = o.config;
  const auto alphas = effective_alphas(o);
  for (double T : o.maturities)
    if (!(T > 0.0)) throw std::invalid_argument("maturities must be positive");
  if (fixed)
    for (double K : o.strikes)
      if (!(K > 0.0)) throw std::invalid_argument("strikes must be positive");

  struct Job {
    double alpha;
    double T;
  };
  std::vector<Job> jobs;
  for (double T : o.maturities)
    for (double a : alphas) jobs.push_back({a, T});

  std::vector<std::vector<PriceRecord>> per_job(jobs.size());
  const unsigned threads = cfg.parallel ? default_thread_count() : 1;
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    const AsianPricer pricer(Kernel::from_alpha(job.alpha), cfg.params, job.T, cfg.quad,
                             cfg.n_steps);
    auto& recs = per_job[i];
    if (fixed) {
      for (double K : o.strikes) {
        const auto cp = pricer.fixed_strike(K);
        recs.push_back({OptionType::fixed_asian_call, job.T, K, job.alpha, cp.call});
        recs.push_back({OptionType::fixed_asian_put, job.T, K, job.alpha, cp.put});
      }
    } else {
      const auto cp = pricer.floating_strike();
      recs.push_back({OptionType::float_asian_call, job.T, std::nullopt, job.alpha, cp.call});
      recs.push_back({OptionType::float_asian_put, job.T, std::nullopt, job.alpha, cp.put});
    }
  });

  // Emit in (T, K, alpha, call/put) order.
  std::vector<PriceRecord> out;
  const std::size_t n_k = fixed ? o.strikes.size() : 1;
  for (std::size_t ti = 0; ti < o.maturities.size(); ++ti)
    for (std::size_t ki = 0; ki < n_k; ++ki)
      for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        const auto& recs = per_job[ti * alphas.size() + ai];
        out.push_back(recs[2 * ki]);
        out.push_back(recs[2 * ki + 1]);
      }
  return out;
}

int cmd_table(const Options& o, std::ostream& out) {
  const bool fixed = o.which == "fixed";
  const auto records = price_grid(o, fixed);
  const CliConfig& cfg = o.config;
  switch (cfg.format) {
    case OutputFormat::csv:
      out << "T,K,alpha,type,price\n";
      for (const auto& r : records) write_csv_row(out, r);
      break;
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : records) arr.push_back(record_json(r));
      out << json{{"config", config_json(cfg)}, {"results", arr}}.dump(2) << '\n';
      break;
    }
    case OutputFormat::table: {
      const auto alphas = effective_alphas(o);
      std::vector<std::string> header{"T"};
      if (fixed) header.push_back("K");
      for (const char* side : {"call", "put"})
        for (double a : alphas) header.push_back(std::string(side) + " a=" + fmt_fixed(a, 2));
      std::vector<std::vector<std::string>> rows;
      const std::size_t per_row = 2 * alphas.size();
      for (std::size_t i = 0; i < records.size(); i += per_row) {
        std::vector<std::string> row{fmt_num(records[i].T)};
        if (fixed) row.push_back(fmt_num(*records[i].K));
        for (std::size_t side = 0; side < 2; ++side)
          for (std::size_t ai = 0; ai < alphas.size(); ++ai)
            row.push_back(fmt_fixed(records[i + 2 * ai + side].result.price, 4));
        rows.push_back(std::move(row));
      }
      write_text_table(out, header, rows);
      break;
    }
  }
  return exit_codes::ok;
}

/// Generic check report: named columns, numeric values, and a pass flag per row.
struct CheckRow {
  std::vector<std::string> labels;
  std::vector<double> values;
  bool pass;
};

int emit_check(std::ostream& out, std::ostream& err, OutputFormat format,
               const std::string& suite, const std::vector<std::string>& label_names,
               const std::vector<std::string>& value_names, const std::vector<CheckRow>& rows) {
  std::size_t failures = 0;
  for (const auto& r : rows) failures += r.pass ? 0 : 1;
  switch (format) {
    case OutputFormat::csv: {
      for (const auto& n : label_names) out << n << ',';
      for (const auto& n : value_names) out << n << ',';
      out << "pass\n";
      for (const auto& r : rows) {
        for (const auto& l : r.labels) out << l << ',';
        for (double v : r.values) out << std::setprecision(6) << v << ',';
        out << (r.pass ? "true" : "false") << '\n';
      }
      break;
    }
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : rows) {
        json row;
        for (std::size_t i = 0; i < label_names.size(); ++i) row[label_names[i]] = r.labels[i];
        for (std::size_t i = 0; i < value_names.size(); ++i) row[value_names[i]] = r.values[i];
        row["pass"] = r.pass;
        arr.push_back(row);
      }
      out << json{{"suite", suite}, {"failures", failures}, {"rows", arr}}.dump(2) << '\n';
      break;
    }
    case OutputFormat::table: {
      std::vector<std::string> header = label_names;
      header.insert(header.end(), value_names.begin(), value_names.end());
      header.push_back("pass");
      std::vector<std::vector<std::string>> text;
      for (const auto& r : rows) {
        std::vector<std::string> row = r.labels;
        for (double v : r.values) {
          std::ostringstream os;
          os << std::setprecision(6) << v;
          row.push_back(os.str());
        }
        row.push_back(r.pass ? "yes" : "NO");
        text.push_back(std::move(row));
      }
      write_text_table(out, header, text);
      out << suite << ": " << rows.size() - failures << "/" << rows.size() << " passed\n";
      break;
    }
  }
  if (failures == 0) return exit_codes::ok;
  err << suite << " check failed in " << failures << " cell(s):\n";
  for (const auto& r : rows) {
    if (r.pass) continue;
    err << " ";
    for (std::size_t i = 0; i < label_names.size(); ++i)
      err << ' ' << label_names[i] << '=' << r.labels[i];
    err << '\n';
  }
  return exit_codes::check_failed;
}

int check_parity(const Options& o, std::ostream& out, std::ostream& err) {
  const CliConfig& cfg = o.config;
  const auto alphas = effective_alphas(o);
  std::vector<CheckRow> rows;
  for (double T : o.maturities)
    for (double a : alphas) {
      const Kernel kernel = Kernel::from_alpha(a);
      const AsianPricer pricer(kernel, cfg.params, T, cfg.quad, cfg.n_steps);
      const auto fl = pricer.floating_strike();
      const double disc = std::exp(-cfg.params.r * T);
      const double mean = pricer.psi10().real();
      const double float_res = std::abs(fl.call.price - fl.put.price - (cfg.params.s0 - disc * mean));
      for (double K : o.strikes) {
        const auto fx = pricer.fixed_strike(K);
        const double fixed_res = std::abs(fx.call.price - fx.put.price - disc * (mean - K));
        rows.push_back({{fmt_num(T), fmt_num(K), fmt_fixed(a, 2)},
                        {fixed_res, float_res},
                        fixed_res < kParityThreshold && float_res < kParityThreshold});
      }
    }
  return emit_check(out, err, cfg.format, "parity", {"T", "K", "alpha"},
                    {"fixed_residual", "float_residual"}, rows);
}

int check_consistency(const Options& o, std::ostream& out, std::ostream& err) {
  const CliConfig& cfg = o.config;
  const std::size_t n = o.steps_given ? cfg.n_steps : kConsistencySteps;
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<CheckRow> rows;
  for (double T : {0.2, 1.0, 3.0})
    for (double s : grid)
      for (double w : grid) {
        if (s + w > 1.0) continue;
        const TransformArg arg{s, w, T};
        const cplx vh = psi0(arg, Kernel::classical(), cfg.params, n);
        const cplx ch = classical_psi0(arg, cfg.params);
        const double dev = std::abs(vh - ch);
        rows.push_back({{fmt_num(s), fmt_num(w), fmt_num(T)}, {dev}, dev < kConsistencyThreshold});
      }
  return emit_check(out, err, cfg.format, "consistency", {"s", "w", "T"}, {"deviation"}, rows);
}

int check_mc(const Options& o, std::ostream& out, std::ostream& err) {
  const CliConfig& cfg = o.config;
  struct Cell {
    double alpha;
    double T;
    OptionType type;
    std::optional<double> K;
  };
  const Cell cells[] = {
      {1.0, 0.5, OptionType::fixed_asian_call, 100.0},
      {1.0, 0.5, OptionType::float_asian_put, std::nullopt},
      {0.75, 1.0, OptionType::fixed_asian_put, 95.0},
      {0.75, 1.0, OptionType::float_asian_call, std::nullopt},
      {0.6, 0.4, OptionType::fixed_asian_call, 105.0},
      {0.6, 0.4, OptionType::float_asian_put, std::nullopt},
  };
  const SimSpec spec{o.mc_paths, o.mc_time, o.mc_seed, true};
  spec.validate();
  std::vector<CheckRow> rows;
  for (const auto& c : cells) {
    PricingRequest req;
    req.option = c.type;
    req.strike = c.K;
    req.T = c.T;
    req.valuation = StatePath::at_inception(cfg.params);
    req.quad = cfg.quad;
    req.n_steps = cfg.n_steps;
    const Kernel kernel = Kernel::from_alpha(c.alpha);
    const double analytic = price(req, kernel, cfg.params).price;
    const McEstimate mc = mc_price(req, kernel, cfg.params, spec);
    const double gap = std::abs(analytic - mc.estimate);
    const double bound = 3.0 * mc.std_error + kMcDiscretizationAllowance;
    rows.push_back({{to_string(c.type), fmt_fixed(c.alpha, 2), fmt_num(c.T), c.K ? fmt_num(*c.K) : "-"},
                    {analytic, mc.estimate, mc.std_error, gap, bound},
                    gap <= bound});
  }
  return emit_check(out, err, cfg.format, "mc", {"type", "alpha", "T", "K"},
                    {"analytic", "mc", "std_error", "gap", "bound"}, rows);
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.suite == "parity") return check_parity(o, out, err);
  if (o.suite == "consistency") return check_consistency(o, out, err);
  return check_mc(o, out, err);
}

}  // namespace

std::string to_json_text(const CliConfig& config, const PriceRecord& record) {
  return json{{"config", config_json(config)}, {"result", record_json(record)}}.dump(2);
}

std::pair<CliConfig, PriceRecord> from_json_text(const std::string& text) {
  try {
    const json j = json::parse(text);
    return {config_from_json(j.at("config")), record_from_json(j.at("result"))};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed price document: ") + e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CliConfig& cfg = o.config;
  double alpha = 1.0;
  int steps = static_cast<int>(cfg.n_steps);
  std::optional<double> strike;

  CLI::App app{"Prices geometric Asian and European options under Volterra-Heston models.",
               "vhasian"};
  app.set_config("--config", "", "flat key=value file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  auto* g_model = "Model";
  app.add_option("--alpha", alpha, "kernel exponent; 1 selects the classical kernel")->group(g_model);
  app.add_option("--kappa", cfg.params.kappa)->group(g_model);
  app.add_option("--theta", cfg.params.theta)->group(g_model);
  app.add_option("--sigma", cfg.params.sigma)->group(g_model);
  app.add_option("--rho", cfg.params.rho)->group(g_model);
  app.add_option("--r", cfg.params.r)->group(g_model);
  app.add_option("--s0", cfg.params.s0)->group(g_model);
  app.add_option("--v0", cfg.params.v0)->group(g_model);

  auto* g_num = "Numerics";
  app.add_option("--steps", steps, "Riccati grid size per maturity")->group(g_num);
  app.add_option("--lower", cfg.quad.lower, "lower cut of the Fourier integral")->group(g_num);
  app.add_option("--upper", cfg.quad.upper, "upper truncation of the Fourier integral")->group(g_num);
  app.add_option("--rule", o.rule, "adaptive | fixed-panel")->group(g_num);
  app.add_option("--panels", cfg.quad.panels)->group(g_num);
  app.add_option("--tol", cfg.quad.tol, "adaptive quadrature tolerance")->group(g_num);
  app.add_option("--max-evals", cfg.quad.max_evaluations)->group(g_num);
  app.add_flag("--parallel", cfg.parallel, "evaluate nodes/cells on all cores")->group(g_num);
  app.add_option("--format", o.format, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  auto* price_cmd = app.add_subcommand("price", "price one option");
  price_cmd->add_option("--type", o.type, "euro-call | fixed-call | fixed-put | float-call | float-put")
      ->required()
      ->check(CLI::IsMember({"euro-call", "fixed-call", "fixed-put", "float-call", "float-put"}));
  price_cmd->add_option("--T", o.T, "maturity in years")->required();
  price_cmd->add_option("--K", strike, "strike (not for floating-strike types)");

  auto* table_cmd = app.add_subcommand("table", "price the benchmark grid");
  table_cmd->add_option("--which", o.which, "fixed | floating")
      ->required()
      ->check(CLI::IsMember({"fixed", "floating"}));
  table_cmd->add_option("--alphas", o.alphas, "comma-separated kernel exponents")->delimiter(',');
  table_cmd->add_option("--maturities", o.maturities)->delimiter(',');
  table_cmd->add_option("--strikes", o.strikes)->delimiter(',');

  auto* check_cmd = app.add_subcommand("check", "run a verification suite");
  check_cmd->add_option("--suite", o.suite, "parity | consistency | mc")
      ->required()
      ->check(CLI::IsMember({"parity", "consistency", "mc"}));
  check_cmd->add_option("--alphas", o.alphas, "comma-separated kernel exponents")->delimiter(',');
  check_cmd->add_option("--maturities", o.maturities)->delimiter(',');
  check_cmd->add_option("--strikes", o.strikes)->delimiter(',');
  check_cmd->add_option("--paths", o.mc_paths, "Monte Carlo paths (mc suite)");
  check_cmd->add_option("--time-steps", o.mc_time, "Monte Carlo time steps (mc suite)");
  check_cmd->add_option("--seed", o.mc_seed, "Monte Carlo seed (mc suite)");

  std::vector<const char*> argv{"vhasian"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_codes::ok : exit_codes::usage;
  }

  try {
    o.alpha_given = app.get_option("--alpha")->count() > 0;
    o.steps_given = app.get_option("--steps")->count() > 0;
    if (steps < 2) throw std::invalid_argument("steps must be >= 2");
    cfg.n_steps = static_cast<std::size_t>(steps);
    cfg.alpha = alpha;
    cfg.quad.rule = parse_quadrature_rule(o.rule);
    cfg.format = parse_output_format(o.format);
    o.K = strike;
    cfg.validate();
    if (price_cmd->parsed()) return cmd_price(o, out);
    if (table_cmd->parsed()) return cmd_table(o, out);
    return cmd_check(o, out, err);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_codes::numeric;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_codes::usage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_codes::usage;
  }
}

}  // namespace vhasian
