#include "hyperframe/error.hpp"
#include "hyperframe/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace hyperframe;

namespace {

const std::map<std::string, std::set<std::string>>& subcommand_products() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"integrate", {"frames", "report"}},
      {"focal", {"focal_meshes", "loci"}},
      {"evolute", {"evolutes"}},
      {"dual", {"dual_meshes", "loci"}},
      {"classify", {"loci"}},
      {"verify", {"report"}},
      {"run", {}},
  };
  return table;
}

void apply_tolerance(CurveSpec& spec, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("--tol", "expected name=value, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ValidationError("--tol " + name, "not a number: '" + text + "'");
  spec.tolerances.set(name, value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Focal surfaces and evolutes of framed curves in hyperbolic 3-space"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir = ".";
  std::vector<std::string> tols;
  bool timestamp = false;

  for (const auto& [name, products] : subcommand_products()) {
    CLI::App* sub = app.add_subcommand(name, "write the " + name + " products");
    sub->add_option("--spec", spec_path, "curve spec (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--tol", tols, "tolerance override name=value");
    sub->add_flag("--timestamp", timestamp, "record the wall-clock time in report.json");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    CurveSpec spec = load_spec(spec_path);
    for (const auto& t : tols) apply_tolerance(spec, t);
    PipelineOptions options;
    options.out_dir = out_dir;
    options.products = subcommand_products().at(command);
    options.timestamp = timestamp;
    const RunReport rep = run_pipeline(spec, options);
    for (const auto& f : rep.written) std::cout << (std::filesystem::path(out_dir) / f).string() << '\n';
    for (const auto& e : rep.json.value("errors", nlohmann::json::array()))
      std::cerr << "error [" << e.value("stage", "") << "]: " << e.value("message", "") << '\n';
    if (rep.numeric_failure) return 2;
    if ((command == "run" || command == "verify") && rep.checks_failed) {
      std::cerr << "verification checks failed\n";
      return 2;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "hyperframe: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidInput:
      case ErrorKind::Syntax:
      case ErrorKind::UnknownIdentifier:
      case ErrorKind::NonIntegerExponent:
      case ErrorKind::Validation:
      case ErrorKind::Io:
        return 1;
      default:
        return 2;
    }
  }
}
