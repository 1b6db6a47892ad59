#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "document.hpp"
#include "report.hpp"
#include "report_check.hpp"

namespace fs = std::filesystem;
using namespace surfmmp::cli;

namespace {

void emit(const Report& report, bool json, std::ostream& out) {
  if (json) {
    out << report.machine.dump(2) << "\n";
  } else {
    out << report.human;
  }
}

std::vector<fs::path> documents_in(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int run_batch(const Request& request, const fs::path& dir, bool json) {
  const auto files = documents_in(dir);
  std::vector<std::future<Report>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [&request, f] { return run_file(request, f.string()); }));
  }
  int worst = kExitOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const Report report = jobs[i].get();
    worst = std::max(worst, report.exit_code);
    if (json) {
      emit(report, true, std::cout);
    } else {
      std::cout << "== " << files[i].filename().string() << " (exit " << report.exit_code
                << ")\n"
                << report.human;
    }
  }
  return worst;
}

int run_check(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kExitError;
  }
  nlohmann::ordered_json report;
  try {
    report = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  const auto result = check_report(report);
  for (const auto& f : result.failures) {
    std::cout << "FAIL " << f << "\n";
  }
  std::cout << result.claims << " claim(s) checked, " << result.failures.size()
            << " failure(s)\n";
  return result.ok() ? kExitOk : kExitInvariant;
}

int run_format(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kExitError;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    std::cout << serialize(parse_input(text.str()));
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical birational geometry of surfaces from resolution models"};
  app.require_subcommand(1);

  Request request;
  bool json = false;
  std::string input;
  std::string batch;

  auto add_input = [&](CLI::App* sub) {
    auto* file = sub->add_option("document", input, "Input JSON document");
    auto* dir = sub->add_option("--batch", batch, "Process every .json document in a directory")
                    ->check(CLI::ExistingDirectory);
    file->excludes(dir);
    sub->add_flag("--json", json, "Emit the machine report");
  };

  const auto describe = [](const std::string& name) -> std::string {
    static const std::map<std::string, std::string> text = {
        {"validate", "Check a document and print curve genera"},
        {"classify", "Singularity class of the pair"},
        {"discrepancies", "Crepant coefficients and total boundary"},
        {"multiplier", "Multiplier ideal divisor"},
        {"rays", "(K+D)-negative extremal rays over the base"},
        {"mmp", "Run the relative MMP"},
        {"dlt-blowup", "Dlt modification with its certificates"},
        {"diff", "Different on a boundary curve"},
        {"ioa", "Compare adjunction on a curve with the pair near it"},
        {"nklt", "Non-klt locus"},
        {"connectedness", "Connectedness of the non-klt locus over each base point"},
        {"blowup", "Blow up a node and recompute"},
    };
    const auto it = text.find(name);
    return it == text.end() ? std::string() : it->second;
  };
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, describe(name));
    add_input(sub);
    if (name == "mmp") {
      sub->add_option("--mode", request.mode, "qf or lc")
          ->check(CLI::IsMember({"qf", "lc"}))
          ->capture_default_str();
      sub->add_option("--ray-policy", request.ray_policy, "Preferred curve order for ray choice")
          ->delimiter(',');
    }
    if (name == "diff" || name == "ioa") {
      sub->add_option("--curve", request.curve, "Curve id")->required();
    }
    if (name == "blowup") {
      sub->add_option("--point", request.point, "Incidence point id")->required();
    }
    sub->callback([&request, name] { request.command = name; });
  }

  std::string report_path;
  auto* check = app.add_subcommand("check", "Re-verify a machine report from its certificates");
  check->add_option("report", report_path)->required();
  std::string format_path;
  auto* format = app.add_subcommand("format", "Print a document in canonical form");
  format->add_option("document", format_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (check->parsed()) {
    return run_check(report_path);
  }
  if (format->parsed()) {
    return run_format(format_path);
  }
  if (!batch.empty()) {
    return run_batch(request, batch, json);
  }
  if (input.empty()) {
    std::cerr << "error: a document or --batch directory is required\n";
    return kExitError;
  }
  const Report report = run_file(request, input);
  if (report.exit_code == kExitError && !json) {
    std::cerr << report.human;
  } else {
    emit(report, json, std::cout);
  }
  return report.exit_code;
}
