#include "arskit/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost-Riemannian structures on Aff+(2) and Heis(3)"};
  std::string command, config_path, out_prefix, box_text, slice_text;
  std::optional<double> tol;
  std::optional<int> resolution;

  std::string names;
  for (const auto& n : arskit::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("--config", config_path, "Structure definition (key = value lines)")->required();
  app.add_option("--tol", tol, "Membership and comparison tolerance");
  app.add_option("--box", box_text, "Box side lo,hi applied to every coordinate");
  app.add_option("--resolution", resolution, "Grid cells per axis");
  app.add_option("--out", out_prefix, "Write <prefix>.csv and <prefix>.svg when the command produces them");
  app.add_option("--slice", slice_text, "heis3 slice z=c for locus export");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return arskit::kExitUsage;
  }

  arskit::CommandFlags flags;
  flags.tol = tol;
  flags.resolution = resolution;
  try {
    if (!box_text.empty()) flags.box = arskit::parse_box_side(box_text);
    if (!slice_text.empty()) flags.slice = arskit::parse_slice(slice_text);
  } catch (const std::exception& e) {
    std::cerr << "arskit: " << e.what() << "\n";
    return arskit::kExitUsage;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "arskit: cannot read config '" << config_path << "'\n";
    return arskit::kExitUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();

  const arskit::ResultRecord rec = arskit::run_command_text(command, text.str(), flags);
  std::cout << rec.str();
  if (!out_prefix.empty()) {
    if (rec.csv && !write_file(out_prefix + ".csv", *rec.csv)) {
      std::cerr << "arskit: cannot write " << out_prefix << ".csv\n";
      return arskit::kExitUsage;
    }
    if (rec.svg && !write_file(out_prefix + ".svg", *rec.svg)) {
      std::cerr << "arskit: cannot write " << out_prefix << ".svg\n";
      return arskit::kExitUsage;
    }
  }
  return rec.exit_code;
}
