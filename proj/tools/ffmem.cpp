#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ffmem/oracle.hpp"
#include "ffmem/report.hpp"

namespace {

using namespace ffmem;

struct Args {
  std::string input;
  std::string grammar;
  std::string output;
  std::string format = "lines";
  std::uint64_t tau = 20;
  std::optional<std::uint64_t> seed;
  bool dump_prmems = false;
  bool no_simplify = false;
  unsigned threads = 1;
};

std::uint64_t effective_seed(const Args& a) {
  if (a.seed) return *a.seed;
  if (const char* env = std::getenv("FFMEM_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return PipelineOptions{}.seed;
}

InputFormat parse_format(const std::string& f) {
  if (f == "fasta") return InputFormat::kFasta;
  if (f == "lines") return InputFormat::kLines;
  throw CLI::ValidationError("--format must be fasta or lines");
}

std::ostream& open_output(const Args& a, std::ofstream& file) {
  if (a.output.empty() || a.output == "-") return std::cout;
  file.open(a.output);
  if (!file) throw io_error("cannot write " + a.output);
  return file;
}

void print_stats(const Grammar& g, std::ostream& out) {
  std::uint64_t n = g.text_base.back();
  out << "strings\t" << g.num_strings() << "\n";
  out << "n\t" << n << "\n";
  out << "G\t" << g.size_G() << "\n";
  out << "g\t" << g.num_rules_g() << "\n";
  out << "h\t" << g.rounds << "\n";
  for (std::uint32_t i = 1; i <= g.rounds; ++i) {
    out << "level_" << i << "\t" << g.level(i).num_rules() << " rules, "
        << g.level(i).rhs.size() << " symbols\n";
  }
  out << "ratio\t" << (n ? static_cast<double>(g.size_G()) / static_cast<double>(n) : 0.0)
      << "\n";
}

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Grammar obtain_grammar(const Args& a) {
  if (!a.grammar.empty() && a.input.empty()) return load_grammar(a.grammar);
  if (a.input.empty()) throw usage_error("need --input or --grammar");
  TextCollection tc = load(a.input, parse_format(a.format));
  return build(tc, effective_seed(a), a.threads);
}

void dump_tuples(const std::vector<PrMemTuple>& ts, std::ostream& out) {
  for (const auto& t : ts) {
    if (t.x == kResolvedTuple) {
      out << "S\tS\t";
    } else {
      out << t.x << '\t' << t.y << '\t';
    }
    out << t.ox << '\t' << t.oy << '\t' << t.len << '\n';
  }
}

int cmd_build(const Args& a) {
  TextCollection tc = load(a.input, parse_format(a.format));
  auto t0 = std::chrono::steady_clock::now();
  Grammar g = build(tc, effective_seed(a), a.threads);
  auto t1 = std::chrono::steady_clock::now();
  if (!a.output.empty()) save_grammar(g, a.output);
  print_stats(g, std::cerr);
  std::cerr << "build_ms\t"
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
  return 0;
}

int cmd_mems(const Args& a) {
  Grammar g = obtain_grammar(a);
  auto tuples = find_prmems(g, a.tau);
  if (a.dump_prmems) dump_tuples(tuples, std::cerr);
  SimplifyResult sr = simplify(g, tuples, !a.no_simplify);
  auto recs = report(sr.idx, g, sr.tuples);
  std::ofstream file;
  std::ostream& out = open_output(a, file);
  for (const auto& r : recs) out << format_record(r) << "\n";
  return 0;
}

int cmd_oracle(const Args& a) {
  TextCollection tc = load(a.input, parse_format(a.format));
  auto recs = brute_mems(tc, a.tau);
  std::ofstream file;
  std::ostream& out = open_output(a, file);
  for (const auto& r : recs) out << format_record(r) << "\n";
  return 0;
}

int cmd_verify(const Args& a) {
  TextCollection tc = load(a.input, parse_format(a.format));
  PipelineOptions opt;
  opt.tau = a.tau;
  opt.seed = effective_seed(a);
  opt.simplify = !a.no_simplify;
  opt.threads = a.threads;
  auto got = compute_mems(tc, opt).mems;
  auto want = brute_mems(tc, a.tau);
  std::vector<MemRecord> missing, extra;
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                      std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                      std::back_inserter(extra));
  if (missing.empty() && extra.empty()) {
    std::cout << "PASS\t" << got.size() << " records\n";
    return 0;
  }
  std::cout << "FAIL\t" << missing.size() << " missing, " << extra.size() << " extra\n";
  for (const auto& r : missing) std::cout << "missing\t" << format_record(r) << "\n";
  for (const auto& r : extra) std::cout << "extra\t" << format_record(r) << "\n";
  return 1;
}

int cmd_stats(const Args& a) {
  Grammar g = obtain_grammar(a);
  print_stats(g, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"all-vs-all maximal exact matches on a fix-free grammar"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&](CLI::App* c, bool needs_input, bool grammar_ok) {
    auto* in = c->add_option("-i,--input", a.input, "input collection");
    if (needs_input && !grammar_ok) in->required();
    if (grammar_ok) c->add_option("-g,--grammar", a.grammar, "serialized grammar file");
    c->add_option("-f,--format", a.format, "input format: fasta|lines");
    c->add_option("-o,--output", a.output, "output path (default stdout)");
    c->add_option("-t,--tau", a.tau, "minimum MEM length")->check(CLI::PositiveNumber);
    c->add_option("-s,--seed", a.seed, "64-bit hash seed (env FFMEM_SEED)");
    c->add_option("--threads", a.threads, "worker threads for parsing");
    c->add_flag("--dump-prmems", a.dump_prmems, "dump raw prMEM tuples to stderr");
    c->add_flag("--no-simplify", a.no_simplify, "skip grammar simplification");
  };

  CLI::App* b = app.add_subcommand("build", "build and serialize the grammar");
  add_common(b, true, false);
  CLI::App* m = app.add_subcommand("mems", "report all-vs-all MEMs");
  add_common(m, false, true);
  CLI::App* o = app.add_subcommand("oracle", "brute-force reference MEMs");
  add_common(o, true, false);
  CLI::App* v = app.add_subcommand("verify", "diff pipeline output against the oracle");
  add_common(v, true, false);
  CLI::App* st = app.add_subcommand("stats", "print grammar statistics");
  add_common(st, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (b->parsed()) return cmd_build(a);
    if (m->parsed()) return cmd_mems(a);
    if (o->parsed()) return cmd_oracle(a);
    if (v->parsed()) return cmd_verify(a);
    if (st->parsed()) return cmd_stats(a);
  } catch (const usage_error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
