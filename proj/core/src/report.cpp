#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "wbgp/campaign.hpp"

namespace wbgp {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

std::string p_value_field(const CellSummary& c) {
  if (!c.p_value) return "NA";
  if (c.p_degenerate) return "-";
  return fixed6(*c.p_value);
}

constexpr const char* kReadme =
    "Campaign output. Comma-separated, UTF-8, header row, numbers in fixed 6-decimal notation.\n"
    "\n"
    "summary.csv      problem,algorithm,mean,std,p_value\n"
    "                 mean/std: population mean and standard deviation of the final best observed\n"
    "                 value over the successful runs. p_value: two-sided Wilcoxon signed-rank test\n"
    "                 against GP-BO on paired runs; NA for the baseline itself or with fewer than 6\n"
    "                 pairs, '-' when every paired difference is zero.\n"
    "traces.csv       problem,algorithm,run,step,query,value,best_so_far\n"
    "                 step counts objective evaluations from 1; the first n_init steps are the Latin\n"
    "                 hypercube design. query is on the rescaled [0,1] axis.\n"
    "convergence/<problem>.csv  step,algorithm,mean_best,std_best\n"
    "                 mean/std of best_so_far across successful runs at each step.\n"
    "timing.csv       problem,algorithm,run,seconds  (wall clock, not reproducible)\n"
    "failures.csv     problem,algorithm,run,error\n";

}  // namespace

void emit_results(const CampaignResult& r, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "convergence", ec);
  if (ec) {
    throw std::runtime_error("cannot create " + (out_dir / "convergence").string() + ": " + ec.message());
  }

  {
    const auto path = out_dir / "summary.csv";
    auto out = open_out(path);
    out << "problem,algorithm,mean,std,p_value\n";
    for (const auto& c : r.cells) {
      out << c.problem << ',' << c.algorithm << ',' << fixed6(c.mean) << ',' << fixed6(c.std) << ','
          << p_value_field(c) << '\n';
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "traces.csv";
    auto out = open_out(path);
    out << "problem,algorithm,run,step,query,value,best_so_far\n";
    for (const auto& o : r.runs) {
      if (!o.trace) continue;
      const auto& t = *o.trace;
      const std::string prefix = r.problems[o.problem] + ',' + r.algorithms[o.algorithm].label() + ',' +
                                 std::to_string(o.run) + ',';
      for (std::size_t s = 0; s < t.size(); ++s) {
        out << prefix << (s + 1) << ',' << fixed6(t.queries[s]) << ',' << fixed6(t.values[s]) << ','
            << fixed6(t.best_so_far[s]) << '\n';
      }
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "timing.csv";
    auto out = open_out(path);
    out << "problem,algorithm,run,seconds\n";
    for (const auto& o : r.runs) {
      if (!o.trace) continue;
      double total = 0.0;
      for (double w : o.trace->wall_times) total += w;
      out << r.problems[o.problem] << ',' << r.algorithms[o.algorithm].label() << ',' << o.run << ','
          << fixed6(total) << '\n';
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "failures.csv";
    auto out = open_out(path);
    out << "problem,algorithm,run,error\n";
    for (const auto& o : r.runs) {
      if (o.trace) continue;
      std::string msg = o.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out << r.problems[o.problem] << ',' << r.algorithms[o.algorithm].label() << ',' << o.run << ',' << msg
          << '\n';
    }
    finish(out, path);
  }
  for (std::size_t p = 0; p < r.problems.size(); ++p) {
    const auto path = out_dir / "convergence" / (r.problems[p] + ".csv");
    auto out = open_out(path);
    out << "step,algorithm,mean_best,std_best\n";
    for (std::size_t s = 0; s < r.steps_per_run; ++s) {
      for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
        std::vector<double> at_step;
        for (std::size_t run = 0; run < r.n_runs; ++run) {
          const auto& o = r.outcome(p, a, run);
          if (o.trace && s < o.trace->size()) {
            at_step.push_back(o.trace->best_so_far[s]);
          }
        }
        if (at_step.empty()) continue;
        const MeanStd ms = mean_std(at_step);
        out << (s + 1) << ',' << r.algorithms[a].label() << ',' << fixed6(ms.mean) << ',' << fixed6(ms.std)
            << '\n';
      }
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "README.txt";
    auto out = open_out(path);
    out << kReadme;
    finish(out, path);
  }
}

}  // namespace wbgp
