#include "ds0/scan.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "ds0/errors.hpp"
#include "ds0/oracle.hpp"

namespace ds0 {

void RunConfig::validate() const {
  const auto& names = TheorySpec::builtin_names();
  if (std::find(names.begin(), names.end(), theory) == names.end())
    throw ConfigError("unknown theory: " + theory);
  if (closure != "zero" && closure != "asymptotic" && closure != "exact")
    throw ConfigError("unknown closure scheme: " + closure);
  for (const auto& f : formats)
    if (f != "csv" && f != "json" && f != "svg") throw ConfigError("unknown format: " + f);
  if (order_lo > order_hi) throw ConfigError("empty order range");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

ClosureScheme exact_closure(const TheorySpec& theory, int max_top, unsigned bits) {
  auto greens = exact_greens(theory, max_top, bits).g;
  return ClosureScheme::with_values(
      ClosureScheme::Kind::exact, [greens](int n) {
        if (n < 1 || n > static_cast<int>(greens.size()))
          throw ContractError("exact closure: order out of range");
        return greens[static_cast<std::size_t>(n - 1)];
      });
}

ClosureScheme make_closure(const TheorySpec& theory, const std::string& name, int max_top,
                           unsigned bits) {
  if (name == "zero") return ClosureScheme::zero_closure();
  if (name == "exact") return exact_closure(theory, max_top, bits);
  if (name == "asymptotic") {
    BigReal rate;
    if (theory.name == "hermitian_quartic" || theory.name == "pt_cubic")
      rate = growth_rate_analytic(theory).rate;
    else
      rate = growth_rate_richardson(theory).rate;
    return asymptotic_closure(growth_model_paper(theory, rate));
  }
  throw ConfigError("unknown closure scheme: " + name);
}

std::vector<RootSet> scan(const RunConfig& config) {
  config.validate();
  const TheorySpec theory = TheorySpec::builtin(config.theory);
  const int max_top = top_index_for_order(theory, config.order_hi);
  const DsTower tower = generate_tower_to_top(theory, max_top);
  const ClosureScheme closure =
      make_closure(theory, config.closure, max_top, config.solver.precision_bits);

  const int lo = std::max(config.order_lo, min_order(theory));
  std::vector<int> orders;
  for (int n = lo; n <= config.order_hi; ++n) orders.push_back(n);

  auto run_one = [&](int order) {
    RootSet rs;
    try {
      TruncatedSystem sys = truncate(tower, order, closure);
      rs = solve_truncated(sys, config.solver);
    } catch (const Error& e) {
      rs.theory = theory.name;
      rs.order = order;
      rs.closure = config.closure;
      rs.diagnostics.push_back(std::string("order failed: ") + e.what());
    }
    return rs;
  };

  std::vector<RootSet> results(orders.size());
  const int workers = std::min<int>(config.workers, static_cast<int>(orders.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < orders.size(); ++i) results[i] = run_one(orders[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (int w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, [&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= orders.size()) return;
          results[i] = run_one(orders[i]);
        }
      }));
    for (auto& f : pool) f.get();
  }
  return results;
}

std::string resolved_config_text(const RunConfig& c) {
  std::ostringstream os;
  os << "closure=" << c.closure << "\n";
  std::string fm;
  for (const auto& f : c.formats) fm += (fm.empty() ? "" : ",") + f;
  os << "formats=" << fm << "\n";
  os << "merge_tol=" << c.solver.merge_tol << "\n";
  os << "orders=" << c.order_lo << ".." << c.order_hi << "\n";
  os << "out_dir=" << c.out_dir << "\n";
  os << "polish_tol=" << c.solver.polish_tol << "\n";
  os << "precision_bits=" << c.solver.precision_bits << "\n";
  os << "seed=" << c.solver.seed << "\n";
  os << "theory=" << c.theory << "\n";
  os << "workers=" << c.workers << "\n";
  return os.str();
}

int write_scan_outputs(const RunConfig& config, const std::vector<RootSet>& results) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const bool want_csv =
      std::find(config.formats.begin(), config.formats.end(), "csv") != config.formats.end();
  const bool want_json =
      std::find(config.formats.begin(), config.formats.end(), "json") != config.formats.end();
  int failures = 0;
  std::ostringstream summary;
  summary << "{\n  \"theory\": \"" << config.theory << "\",\n  \"closure\": \"" << config.closure
          << "\",\n  \"orders\": [";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const RootSet& rs = results[i];
    bool failed = !rs.diagnostics.empty() && rs.roots.empty();
    if (failed || rs.path_failures > 0) ++failures;
    std::string stem = config.theory + "_" + config.closure + "_order" +
                       std::to_string(rs.order);
    if (want_csv) {
      std::ofstream out(fs::path(config.out_dir) / (stem + ".csv"));
      out << rs.csv();
    }
    if (want_json) {
      std::ofstream out(fs::path(config.out_dir) / (stem + ".json"));
      out << rs.json();
    }
    summary << (i ? ", " : "") << rs.order;
  }
  summary << "],\n  \"orders_with_failures\": " << failures << "\n}\n";
  std::ofstream sum(fs::path(config.out_dir) / "scan_summary.json");
  sum << summary.str();
  std::ofstream echo(fs::path(config.out_dir) / "config.resolved.txt");
  echo << resolved_config_text(config);
  return failures;
}

}  // namespace ds0
