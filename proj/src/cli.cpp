#include "crowdsel/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "crowdsel/crowding.hpp"
#include "crowdsel/dataset.hpp"
#include "crowdsel/eval.hpp"
#include "crowdsel/rankers.hpp"
#include "crowdsel/report.hpp"
#include "crowdsel/selection.hpp"
#include "crowdsel/stats.hpp"
#include "crowdsel/version.hpp"

namespace crowdsel::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 1234567;

std::string dataset_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string two_decimals(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct RankingRequest {
  std::string method = "crowding";
  int relief_k = 0;  // 0: default 10 clamped to the largest feasible value
};

int effective_relief_k(const Dataset& ds, int requested) {
  if (requested > 0) return requested;
  return std::max(1, std::min(10, max_relieff_k(ds)));
}

FeatureRanking compute_ranking(const Dataset& ds, const RankingRequest& req) {
  if (req.method == "crowding") return rank_descending(crowding_scores(ds));
  if (req.method == "pearson") return rank_descending(pearson_scores(ds).values, "pearson");
  if (req.method == "variance") return rank_descending(variance_scores(ds).values, "variance");
  if (req.method == "relieff")
    return rank_descending(relieff_scores(ds, effective_relief_k(ds, req.relief_k)).values,
                           "relieff");
  throw std::invalid_argument("unknown ranking method '" + req.method + "'");
}

json ranking_to_json(const Dataset& ds, const FeatureRanking& ranking) {
  json entries = json::array();
  for (std::size_t pos = 0; pos < ranking.order.size(); ++pos) {
    const int f = ranking.order[pos];
    json entry{{"rank", pos + 1},
               {"index", f},
               {"name", ds.feature_names[static_cast<std::size_t>(f)]}};
    if (ranking.method == "crowding") {
      const CrowdingScore& s = ranking.crowding[static_cast<std::size_t>(f)];
      entry["score"] = {{"boundary_count", s.boundary_count}, {"finite_sum", s.finite_sum}};
    } else {
      entry["score"] = ranking.values[static_cast<std::size_t>(f)];
    }
    entries.push_back(std::move(entry));
  }
  return json{{"method", ranking.method}, {"order", ranking.order}, {"entries", entries}};
}

json eval_to_json(const EvalReport& report) {
  return json{{"mean", report.mean},
              {"std", report.stddev},
              {"worst", report.worst},
              {"best", report.best},
              {"per_run", report.per_run}};
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError(path + ": cannot open file for writing");
  out << text;
}

ClassifierConfig::Kind parse_classifier(const std::string& name) {
  if (name == "knn") return ClassifierConfig::Kind::knn;
  if (name == "linear_svm") return ClassifierConfig::Kind::linear_svm;
  throw std::invalid_argument("unknown classifier '" + name + "'");
}

// ---------------------------------------------------------------- rank ----

struct RankOptions {
  std::string dataset;
  std::string label_col;
  RankingRequest ranking;
  std::string output;
  std::string format = "json";
};

int cmd_rank(const RankOptions& opt, std::ostream& out, std::ostream& err) {
  const Dataset ds = load_csv(opt.dataset, opt.label_col);
  const FeatureRanking ranking = compute_ranking(ds, opt.ranking);

  if (opt.format == "json") {
    json params{{"method", opt.ranking.method}, {"label_col", opt.label_col}};
    if (opt.ranking.method == "relieff")
      params["relief_k"] = effective_relief_k(ds, opt.ranking.relief_k);
    json report{{"manifest", make_manifest("rank", opt.dataset, dataset_stem(opt.dataset), params)},
                {"ranking", ranking_to_json(ds, ranking)}};
    write_text(opt.output, canonical_dump(report), out);
  } else if (opt.format == "csv" || opt.format == "md") {
    std::ostringstream os;
    const bool crowd = ranking.method == "crowding";
    if (opt.format == "csv") {
      os << (crowd ? "rank,index,name,boundary_count,finite_sum\n" : "rank,index,name,score\n");
    } else {
      os << (crowd ? "| rank | index | name | boundary_count | finite_sum |\n|---|---|---|---|---|\n"
                   : "| rank | index | name | score |\n|---|---|---|---|\n");
    }
    const char* sep = opt.format == "csv" ? "," : " | ";
    for (std::size_t pos = 0; pos < ranking.order.size(); ++pos) {
      const int f = ranking.order[pos];
      if (opt.format == "md") os << "| ";
      os << (pos + 1) << sep << f << sep << ds.feature_names[static_cast<std::size_t>(f)];
      if (crowd) {
        const CrowdingScore& s = ranking.crowding[static_cast<std::size_t>(f)];
        os << sep << s.boundary_count << sep << s.finite_sum;
      } else {
        os << sep << ranking.values[static_cast<std::size_t>(f)];
      }
      os << (opt.format == "md" ? " |\n" : "\n");
    }
    write_text(opt.output, os.str(), out);
  } else {
    throw std::invalid_argument("unknown format '" + opt.format + "'");
  }
  err << "ranked " << ds.n_features() << " features of " << dataset_stem(opt.dataset) << " by "
      << ranking.method << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- select ----

struct SelectOptions {
  std::string dataset;
  std::string label_col;
  std::string mode = "filter";
  RankingRequest ranking;
  int k = 0;  // filter only
  std::string classifier = "knn";
  int knn_k = 5;
  double svm_lambda = 1e-3;
  int svm_epochs = 50;
  int folds = 5;
  int reps = 30;
  std::uint64_t seed = kDefaultSeed;
  double threshold = 0.0;  // wrapper only; 0 = none
  std::string output;
  std::string format = "json";
  bool trace = false;
};

json select_params(const SelectOptions& opt) {
  json params{{"mode", opt.mode},
              {"method", opt.ranking.method},
              {"classifier", opt.classifier},
              {"folds", opt.folds},
              {"repetitions", opt.reps},
              {"seed", opt.seed},
              {"label_col", opt.label_col}};
  if (opt.mode == "filter") params["k"] = opt.k;
  if (opt.classifier == "knn") params["knn_k"] = opt.knn_k;
  if (opt.classifier == "linear_svm") {
    params["svm_lambda"] = opt.svm_lambda;
    params["svm_epochs"] = opt.svm_epochs;
  }
  if (opt.mode == "wrapper" && opt.threshold > 0.0) params["threshold"] = opt.threshold;
  return params;
}

std::string summary_table(const std::string& title, const EvalReport& report,
                          const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "name,mean,std,worst,best\n"
       << title << ',' << two_decimals(report.mean) << ',' << two_decimals(report.stddev) << ','
       << two_decimals(report.worst) << ',' << two_decimals(report.best) << '\n';
  } else {
    os << "| name | mean | std | worst | best |\n|---|---|---|---|---|\n| " << title << " | "
       << two_decimals(report.mean) << " | " << two_decimals(report.stddev) << " | "
       << two_decimals(report.worst) << " | " << two_decimals(report.best) << " |\n";
  }
  return os.str();
}

int cmd_select(const SelectOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.mode != "filter" && opt.mode != "wrapper")
    throw std::invalid_argument("mode must be 'filter' or 'wrapper'");
  if (opt.mode == "filter" && opt.k < 1)
    throw std::invalid_argument("filter mode requires --k >= 1");

  ClassifierConfig clf;
  clf.kind = parse_classifier(opt.classifier);
  clf.knn_k = opt.knn_k;
  clf.svm_lambda = opt.svm_lambda;
  clf.svm_epochs = opt.svm_epochs;
  clf.validate();

  const Dataset ds = load_csv(opt.dataset, opt.label_col);
  const FeatureRanking ranking = compute_ranking(ds, opt.ranking);

  json report{{"manifest", make_manifest("select", opt.dataset, dataset_stem(opt.dataset),
                                         select_params(opt))}};
  EvalReport eval;

  if (opt.mode == "filter") {
    const SelectionResult sel = filter_select(ranking, opt.k);
    eval = repeated_eval(ds, sel.selected, clf,
                         {opt.folds, opt.reps, opt.seed});
    json names = json::array();
    for (int f : sel.selected) names.push_back(ds.feature_names[static_cast<std::size_t>(f)]);
    report["selection"] = {{"method", "filter"},
                           {"ranking_method", sel.ranking_method},
                           {"k", opt.k},
                           {"selected", sel.selected},
                           {"selected_names", names}};
    report["evaluation"] = eval_to_json(eval);
    err << "filter k=" << opt.k << " runtime " << eval.runtime_seconds << " s\n";
  } else {
    const std::optional<double> threshold =
        opt.threshold > 0.0 ? std::optional<double>(opt.threshold) : std::nullopt;
    const WrapperRuns runs = repeated_wrapper(ds, ranking, clf, opt.folds, opt.reps, opt.seed,
                                              threshold);
    std::vector<double> per_run;
    per_run.reserve(runs.runs.size());
    json run_list = json::array();
    for (const SelectionResult& run : runs.runs) {
      per_run.push_back(run.best_accuracy);
      json entry{{"accuracy", run.best_accuracy},
                 {"n_selected", run.selected.size()},
                 {"selected", run.selected}};
      if (opt.trace || opt.reps == 1) {
        json trace = json::array();
        for (const auto& step : run.trace)
          trace.push_back({{"feature", step.feature},
                           {"fitness", step.fitness},
                           {"accepted", step.accepted}});
        entry["trace"] = std::move(trace);
      }
      run_list.push_back(std::move(entry));
    }
    const SummaryStats s = summary_stats(per_run);
    eval.mean = s.mean;
    eval.stddev = s.stddev;
    eval.worst = s.worst;
    eval.best = s.best;
    eval.per_run = per_run;

    const SelectionResult& best = runs.runs[static_cast<std::size_t>(runs.best_run)];
    report["selection"] = {
        {"method", "wrapper"},
        {"ranking_method", ranking.method},
        {"repetitions", opt.reps},
        {"runs", run_list},
        {"best_run",
         {{"index", runs.best_run},
          {"accuracy", best.best_accuracy},
          {"n_selected", best.selected.size()},
          {"selected", best.selected}}},
        {"features_for_best",
         std::to_string(best.selected.size()) + "/" + std::to_string(ds.n_features())}};
    report["evaluation"] = eval_to_json(eval);
    err << "wrapper best " << two_decimals(best.best_accuracy) << " with "
        << best.selected.size() << "/" << ds.n_features() << " features, runtime "
        << runs.runtime_seconds << " s\n";
  }

  if (opt.format == "json") {
    write_text(opt.output, canonical_dump(report), out);
  } else if (opt.format == "csv" || opt.format == "md") {
    write_text(opt.output,
               summary_table(dataset_stem(opt.dataset) + " " + opt.mode + " " +
                                 opt.ranking.method,
                             eval, opt.format),
               out);
  } else {
    throw std::invalid_argument("unknown format '" + opt.format + "'");
  }
  return kExitOk;
}

// ----------------------------------------------------------- benchmark ----

struct BenchmarkOptions {
  std::string config;
  std::string out_dir = ".";
};

struct BenchmarkEntry {
  std::string name;
  std::string path;
  std::string label_col;
  int k = 10;
  int relief_k = 0;
};

int cmd_benchmark(const BenchmarkOptions& opt, std::ostream& out, std::ostream& err) {
  std::ifstream in(opt.config);
  if (!in) throw DatasetError(opt.config + ": cannot open file");
  json config;
  try {
    config = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(opt.config + ": invalid JSON (" + e.what() + ")");
  }

  const int folds = config.value("folds", 5);
  const int reps = config.value("repetitions", 30);
  const std::uint64_t seed = config.value("seed", kDefaultSeed);
  const std::string classifier = config.value("classifier", "knn");

  ClassifierConfig clf;
  clf.kind = parse_classifier(classifier);
  clf.knn_k = config.value("knn_k", 5);
  clf.svm_lambda = config.value("svm_lambda", 1e-3);
  clf.svm_epochs = config.value("svm_epochs", 50);
  clf.validate();

  std::vector<std::string> methods;
  for (const auto& m : config.value("methods", json::array())) methods.push_back(m);
  std::vector<BenchmarkEntry> entries;
  for (const auto& d : config.value("datasets", json::array())) {
    BenchmarkEntry e;
    e.path = d.at("path");
    e.name = d.value("name", dataset_stem(e.path));
    e.label_col = d.value("label_col", "");
    e.k = d.value("k", 10);
    e.relief_k = d.value("relief_k", 0);
    entries.push_back(std::move(e));
  }
  const bool wrapper_enabled = config.value("wrapper", json(false)).is_object()
                                   ? config["wrapper"].value("enabled", true)
                                   : config.value("wrapper", false);
  int wrapper_reps = reps;
  std::optional<double> wrapper_threshold;
  if (config.contains("wrapper") && config["wrapper"].is_object()) {
    wrapper_reps = config["wrapper"].value("repetitions", reps);
    if (config["wrapper"].contains("threshold") && !config["wrapper"]["threshold"].is_null())
      wrapper_threshold = config["wrapper"]["threshold"].get<double>();
  }

  if (entries.empty()) throw std::invalid_argument(opt.config + ": no datasets listed");
  if (methods.empty() && !wrapper_enabled)
    throw std::invalid_argument(opt.config + ": no methods listed and wrapper disabled");

  json rows = json::array();
  json wrapper_rows = json::array();
  json failures = json::array();

  for (const BenchmarkEntry& entry : entries) {
    Dataset ds;
    try {
      ds = load_csv(entry.path, entry.label_col);
    } catch (const std::exception& e) {
      err << "FAILED " << entry.name << ": " << e.what() << "\n";
      failures.push_back({{"dataset", entry.name}, {"error", e.what()}});
      continue;
    }
    for (const std::string& method : methods) {
      try {
        const FeatureRanking ranking = compute_ranking(ds, {method, entry.relief_k});
        const SelectionResult sel = filter_select(ranking, entry.k);
        const EvalReport eval = repeated_eval(ds, sel.selected, clf, {folds, reps, seed});
        rows.push_back({{"dataset", entry.name},
                        {"method", method},
                        {"k", entry.k},
                        {"mean", eval.mean},
                        {"std", eval.stddev},
                        {"worst", eval.worst},
                        {"best", eval.best},
                        {"per_run", eval.per_run}});
        err << entry.name << " " << method << " k=" << entry.k << " mean "
            << two_decimals(eval.mean) << " (" << eval.runtime_seconds << " s)\n";
      } catch (const std::exception& e) {
        err << "FAILED " << entry.name << " " << method << ": " << e.what() << "\n";
        failures.push_back(
            {{"dataset", entry.name}, {"method", method}, {"error", e.what()}});
      }
    }
    if (wrapper_enabled) {
      try {
        const FeatureRanking ranking = compute_ranking(ds, {"crowding", 0});
        const WrapperRuns runs = repeated_wrapper(ds, ranking, clf, folds, wrapper_reps, seed,
                                                  wrapper_threshold);
        std::vector<double> per_run;
        for (const auto& run : runs.runs) per_run.push_back(run.best_accuracy);
        const SummaryStats s = summary_stats(per_run);
        const SelectionResult& best = runs.runs[static_cast<std::size_t>(runs.best_run)];
        wrapper_rows.push_back(
            {{"dataset", entry.name},
             {"features_for_best",
              std::to_string(best.selected.size()) + "/" + std::to_string(ds.n_features())},
             {"mean", s.mean},
             {"std", s.stddev},
             {"worst", s.worst},
             {"best", s.best},
             {"per_run", per_run}});
        err << entry.name << " wrapper mean " << two_decimals(s.mean) << " best "
            << two_decimals(s.best) << " (" << runs.runtime_seconds << " s)\n";
      } catch (const std::exception& e) {
        err << "FAILED " << entry.name << " wrapper: " << e.what() << "\n";
        failures.push_back(
            {{"dataset", entry.name}, {"method", "wrapper"}, {"error", e.what()}});
      }
    }
  }

  json params{{"folds", folds},
              {"repetitions", reps},
              {"seed", seed},
              {"classifier", classifier},
              {"methods", methods},
              {"wrapper", wrapper_enabled}};
  json report{{"manifest", make_manifest("benchmark", opt.config, dataset_stem(opt.config), params)},
              {"rows", rows},
              {"wrapper_rows", wrapper_rows},
              {"failures", failures}};

  // Markdown tables: one filter row group per dataset, then the wrapper table.
  std::ostringstream md;
  md << "# Benchmark report\n\n## Filter methods (" << classifier << ", folds=" << folds
     << ", repetitions=" << reps << ")\n\n";
  md << "| dataset | k | method | mean | std | worst | best |\n|---|---|---|---|---|---|---|\n";
  for (const auto& row : rows)
    md << "| " << row["dataset"].get<std::string>() << " | " << row["k"].get<int>() << " | "
       << row["method"].get<std::string>() << " | " << two_decimals(row["mean"].get<double>())
       << " | " << two_decimals(row["std"].get<double>()) << " | "
       << two_decimals(row["worst"].get<double>()) << " | "
       << two_decimals(row["best"].get<double>()) << " |\n";
  if (!wrapper_rows.empty()) {
    md << "\n## Wrapper (greedy over crowding order)\n\n"
       << "| dataset | features for best | mean | std | worst | best |\n|---|---|---|---|---|---|\n";
    for (const auto& row : wrapper_rows)
      md << "| " << row["dataset"].get<std::string>() << " | "
         << row["features_for_best"].get<std::string>() << " | "
         << two_decimals(row["mean"].get<double>()) << " | "
         << two_decimals(row["std"].get<double>()) << " | "
         << two_decimals(row["worst"].get<double>()) << " | "
         << two_decimals(row["best"].get<double>()) << " |\n";
  }
  if (!failures.empty()) {
    md << "\n## Failures\n\n";
    for (const auto& f : failures)
      md << "- " << f["dataset"].get<std::string>() << ": " << f["error"].get<std::string>()
         << "\n";
  }

  std::filesystem::create_directories(opt.out_dir);
  const std::string json_path = (std::filesystem::path(opt.out_dir) / "report.json").string();
  const std::string md_path = (std::filesystem::path(opt.out_dir) / "report.md").string();
  write_text(json_path, canonical_dump(report), out);
  write_text(md_path, md.str(), out);
  out << "wrote " << json_path << " and " << md_path << "\n";
  return failures.empty() ? kExitOk : kExitPartialFailure;
}

// ------------------------------------------------------------- compare ----

struct CompareOptions {
  std::string report_a;
  std::string report_b;
  std::string dataset;
  std::string format = "text";
};

int cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err) {
  auto load_report = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(path + ": cannot open file");
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw std::invalid_argument(path + ": invalid JSON (" + e.what() + ")");
    }
  };
  auto extract = [&opt](const json& report, const std::string& path) {
    if (!report.contains("manifest") || !report["manifest"].contains("dataset"))
      throw std::invalid_argument(path + ": missing manifest.dataset");
    const std::string name = report["manifest"]["dataset"].value("name", "");
    if (name != opt.dataset)
      throw std::invalid_argument(path + ": dataset key '" + name + "' does not match '" +
                                  opt.dataset + "'");
    if (!report.contains("evaluation") || !report["evaluation"].contains("per_run"))
      throw std::invalid_argument(path + ": missing evaluation.per_run");
    return report["evaluation"]["per_run"].get<std::vector<double>>();
  };

  const json report_a = load_report(opt.report_a);
  const json report_b = load_report(opt.report_b);
  const std::vector<double> a = extract(report_a, opt.report_a);
  const std::vector<double> b = extract(report_b, opt.report_b);
  if (a.empty() || b.empty()) throw std::invalid_argument("per_run arrays must be nonempty");

  const TestOutcome outcome = wilcoxon_rank_sum(a, b);
  if (opt.format == "json") {
    json result{{"dataset", opt.dataset},
                {"n_a", a.size()},
                {"n_b", b.size()},
                {"u_statistic", outcome.u_statistic},
                {"p_value", outcome.p_value},
                {"method", outcome.method},
                {"significant_at_005", outcome.significant_at_005}};
    out << canonical_dump(result);
  } else {
    out << "dataset: " << opt.dataset << "\n"
        << "n_a=" << a.size() << " n_b=" << b.size() << "\n"
        << "U = " << outcome.u_statistic << "\n"
        << "p = " << outcome.p_value << " (" << outcome.method << ")\n"
        << "significant at 0.05: " << (outcome.significant_at_005 ? "yes" : "no") << "\n";
  }
  err << "compared " << opt.report_a << " vs " << opt.report_b << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
#ifdef _OPENMP
  if (const char* threads = std::getenv("CROWDSEL_THREADS")) {
    const int n = std::atoi(threads);
    if (n > 0) omp_set_num_threads(n);
  }
#endif

  CLI::App app{"crowdsel: crowding-distance feature selection toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  const std::vector<std::string> methods{"crowding", "pearson", "relieff", "variance"};
  const std::vector<std::string> classifiers{"knn", "linear_svm"};
  const std::vector<std::string> formats{"json", "csv", "md"};

  RankOptions rank_opt;
  CLI::App* rank = app.add_subcommand("rank", "Rank all features of a dataset");
  rank->add_option("dataset", rank_opt.dataset, "CSV dataset path")->required();
  rank->add_option("--method", rank_opt.ranking.method, "Ranking method")
      ->check(CLI::IsMember(methods));
  rank->add_option("--label-col", rank_opt.label_col, "Label column name");
  rank->add_option("--relief-k", rank_opt.ranking.relief_k, "ReliefF neighbours (0 = auto)");
  rank->add_option("--output", rank_opt.output, "Write report here instead of stdout");
  rank->add_option("--format", rank_opt.format, "Output format")->check(CLI::IsMember(formats));

  SelectOptions select_opt;
  CLI::App* select = app.add_subcommand("select", "Select features and evaluate them");
  select->add_option("dataset", select_opt.dataset, "CSV dataset path")->required();
  select->add_option("--mode", select_opt.mode, "filter or wrapper")
      ->check(CLI::IsMember({"filter", "wrapper"}));
  select->add_option("--method", select_opt.ranking.method, "Ranking method")
      ->check(CLI::IsMember(methods));
  select->add_option("--k", select_opt.k, "Filter: number of top features to keep");
  select->add_option("--label-col", select_opt.label_col, "Label column name");
  select->add_option("--relief-k", select_opt.ranking.relief_k, "ReliefF neighbours (0 = auto)");
  select->add_option("--classifier", select_opt.classifier, "Fitness classifier")
      ->check(CLI::IsMember(classifiers));
  select->add_option("--knn-k", select_opt.knn_k, "k-NN neighbours (odd)");
  select->add_option("--svm-lambda", select_opt.svm_lambda, "Linear SVM regularisation");
  select->add_option("--svm-epochs", select_opt.svm_epochs, "Linear SVM epochs");
  select->add_option("--folds", select_opt.folds, "Cross-validation folds");
  select->add_option("--reps", select_opt.reps, "Repetitions");
  select->add_option("--seed", select_opt.seed, "Master seed");
  select->add_option("--threshold", select_opt.threshold,
                     "Wrapper: stop once best accuracy reaches this percent");
  select->add_flag("--trace", select_opt.trace, "Wrapper: include per-step traces");
  select->add_option("--output", select_opt.output, "Write report here instead of stdout");
  select->add_option("--format", select_opt.format, "Output format")
      ->check(CLI::IsMember(formats));

  BenchmarkOptions bench_opt;
  CLI::App* bench = app.add_subcommand("benchmark", "Run a datasets x methods protocol");
  bench->add_option("config", bench_opt.config, "Benchmark config JSON")->required();
  bench->add_option("--out", bench_opt.out_dir, "Output directory for report.json/report.md");

  CompareOptions compare_opt;
  CLI::App* compare = app.add_subcommand("compare", "Rank-sum test between two reports");
  compare->add_option("report_a", compare_opt.report_a, "First select report")->required();
  compare->add_option("report_b", compare_opt.report_b, "Second select report")->required();
  compare->add_option("--dataset", compare_opt.dataset, "Dataset key both reports must carry")
      ->required();
  compare->add_option("--format", compare_opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (rank->parsed()) return cmd_rank(rank_opt, out, err);
    if (select->parsed()) return cmd_select(select_opt, out, err);
    if (bench->parsed()) return cmd_benchmark(bench_opt, out, err);
    if (compare->parsed()) return cmd_compare(compare_opt, out, err);
  } catch (const DatasetError& e) {
    err << "dataset error: " << e.what() << "\n";
    return kExitDatasetError;
  } catch (const std::invalid_argument& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }
  return kExitUsageError;
}

}  // namespace crowdsel::cli
