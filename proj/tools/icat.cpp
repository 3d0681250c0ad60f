// icat: checks and constructions over spec files.
//
// Exit status: 0 all checks pass, 1 some axiom fails, 2 the input could not be used.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "icat/frontend/commands.hpp"

namespace {

using namespace icat;
using namespace icat::frontend;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t c = s.find(',', start);
    out.push_back(s.substr(start, c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks internal categories, monoidal and enriched structure, and their externalizations"};
  app.require_subcommand(1);

  std::string file, target, index, family, output, format = "human";
  std::size_t bound = default_bound();
  std::size_t witness_limit = kDefaultWitnessLimit;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--witness-limit", witness_limit, "Witnesses kept per axiom (0 keeps all)");

  auto add = [&](const char* name, const char* help, bool need_target) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Spec file")->required();
    auto* t = sub->add_option("--target", target, "Declaration to act on");
    if (need_target) t->required();
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--witness-limit", witness_limit, "Witnesses kept per axiom (0 keeps all)");
    return sub;
  };
  CLI::App* check = add("check", "Check the axioms of one declaration or of all of them", false);
  CLI::App* ext = add("externalize", "Build and check the fiber over an index set", true);
  ext->add_option("--index", index, "Index set")->required();
  CLI::App* gro = add("grothendieck", "Build and check the total category over an index family", true);
  gro->add_option("--family", family, "Comma-separated set names, products as A*B, or one family name")->required();
  CLI::App* mc = add("multicat", "Build the multicategory enrichment and check it", true);
  mc->add_option("--bound", bound, "Path bound");
  CLI::App* rt = add("roundtrip", "Translate to multicategories and back", true);
  rt->add_option("--bound", bound, "Path bound");
  CLI::App* und = add("underlying", "Check the underlying category and its fibers", true);
  CLI::App* dot = add("export-dot", "Write a DOT graph", true);
  dot->add_option("-o,--output", output, "Output path, '-' for standard output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    Workspace ws = parse_spec(read_file(file), bound);
    CheckOptions opt{witness_limit};
    CommandResult res;
    if (check->parsed()) {
      res = cmd_check(ws, target.empty() ? std::nullopt : std::optional<std::string>(target), opt);
    } else if (ext->parsed()) {
      res = cmd_externalize(ws, target, index, opt);
    } else if (gro->parsed()) {
      res = cmd_grothendieck(ws, target, split_commas(family), opt);
    } else if (mc->parsed()) {
      res = cmd_to_multicat(ws, target, bound, opt);
    } else if (rt->parsed()) {
      res = cmd_roundtrip(ws, target, bound, opt);
    } else if (und->parsed()) {
      res = cmd_underlying(ws, target, opt);
    } else if (dot->parsed()) {
      std::string text = cmd_export_dot(ws, target);
      if (output == "-") {
        std::cout << text;
      } else {
        std::ofstream out(output, std::ios::binary);
        if (!(out << text)) throw InputError("cannot write '" + output + "'");
      }
      return kPass;
    }
    std::cout << (format == "machine" ? format_machine(res) : format_human(res));
    return res.passed() ? kPass : kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
