#include "wsync/cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsync/automaton.hpp"
#include "wsync/corpus.hpp"
#include "wsync/errors.hpp"
#include "wsync/heuristics.hpp"
#include "wsync/oracle.hpp"
#include "wsync/powerset.hpp"

namespace wsync {

namespace {

using nlohmann::ordered_json;

std::uint32_t parse_uint(const std::string& text, const std::string& what) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("invalid " + what + ": '" + text + "'");
  return value;
}

// Inputs are either a file path or one of the built-in schemes paper:A,
// paper:B, cerny:<n>.
Automaton load_input(const std::string& name) {
  if (name == "paper:A") return paper_automaton_A();
  if (name == "paper:B") return paper_automaton_B();
  if (name.rfind("cerny:", 0) == 0)
    return cerny(parse_uint(name.substr(6), "state count in '" + name + "'"));
  std::ifstream file(name, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open input '" + name + "'");
  try {
    return parse_automaton(file);
  } catch (const ParseError& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

// "-" spells the empty word on the command line.
Word word_from_cli(const std::string& raw) { return raw == "-" ? Word() : raw; }
std::string display_word(const Word& word) { return word.empty() ? "-" : word; }

enum class Format { Text, Json, Tsv };

Format parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "tsv") return Format::Tsv;
  throw std::invalid_argument("unknown format '" + name + "' (expected text, json, or tsv)");
}

HeuristicKind parse_heuristic(const std::string& name) {
  auto kind = heuristic_from_name(name);
  if (!kind)
    throw std::invalid_argument("unknown heuristic '" + name + "' (expected H1, H2, H3, or H4)");
  return *kind;
}

std::vector<HeuristicKind> parse_heuristic_list(const std::string& list) {
  std::vector<HeuristicKind> kinds;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string::npos) comma = list.size();
    std::string item = list.substr(start, comma - start);
    if (item.empty()) throw std::invalid_argument("empty entry in heuristic list '" + list + "'");
    kinds.push_back(parse_heuristic(item));
    start = comma + 1;
  }
  return kinds;
}

// "2..6" or a single "3".
std::vector<std::uint32_t> parse_m_range(const std::string& text) {
  std::size_t dots = text.find("..");
  if (dots == std::string::npos) return {parse_uint(text, "m value")};
  std::uint32_t lo = parse_uint(text.substr(0, dots), "m range start");
  std::uint32_t hi = parse_uint(text.substr(dots + 2), "m range end");
  if (lo > hi) throw std::invalid_argument("empty m range '" + text + "'");
  std::vector<std::uint32_t> values;
  for (std::uint32_t m = lo; m <= hi; ++m) values.push_back(m);
  return values;
}

struct ReferenceRow {
  Word word;
  std::uint64_t length = 0;
  std::uint64_t weight = 0;
};

using ReferenceKey = std::pair<std::uint32_t, std::string>;

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::map<ReferenceKey, ReferenceRow> load_reference_table(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open reference table '" + path + "'");
  std::map<ReferenceKey, ReferenceRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = split_tabs(line);
    if (lineno == 1 && !cols.empty() && cols[0] == "m") continue;  // header
    if (cols.size() != 5)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected 5 tab-separated columns");
    ReferenceKey key{parse_uint(cols[0], "m in reference table"),
                     std::string(heuristic_name(parse_heuristic(cols[1])))};
    ReferenceRow row;
    row.word = word_from_cli(cols[2]);
    row.length = parse_uint(cols[3], "length in reference table");
    row.weight = parse_uint(cols[4], "weight in reference table");
    rows[key] = row;
  }
  return rows;
}

std::string bool_name(bool value) { return value ? "true" : "false"; }

std::string set_display(const StateSet& set) { return "{" + set.to_string() + "}"; }

// sync and table rows share the fixed field order m, heuristic, word,
// length, weight, verified.
struct ResultRow {
  std::uint32_t m = 0;
  HeuristicKind kind = HeuristicKind::H1;
  const SyncResult* result = nullptr;
  bool verified = false;
  // Reference comparison, when requested and available.
  const ReferenceRow* ref = nullptr;
  bool have_agreement = false;
  std::string agreement;
};

ordered_json row_to_json(const ResultRow& row) {
  ordered_json object;
  object["m"] = row.m;
  object["heuristic"] = heuristic_name(row.kind);
  object["word"] = row.result->word;
  object["length"] = row.result->length;
  object["weight"] = row.result->weight;
  object["verified"] = row.verified;
  if (row.have_agreement) {
    if (row.ref) {
      object["ref_weight"] = row.ref->weight;
      object["weight_delta"] = static_cast<std::int64_t>(row.result->weight) -
                               static_cast<std::int64_t>(row.ref->weight);
    }
    object["agreement"] = row.agreement;
  }
  return object;
}

std::string row_to_tsv(const ResultRow& row) {
  std::string line = std::to_string(row.m);
  line += '\t';
  line += heuristic_name(row.kind);
  line += '\t';
  line += display_word(row.result->word);
  line += '\t' + std::to_string(row.result->length);
  line += '\t' + std::to_string(row.result->weight);
  line += '\t' + bool_name(row.verified);
  if (row.have_agreement) {
    if (row.ref) {
      line += '\t' + std::to_string(row.ref->weight);
      line += '\t' + std::to_string(static_cast<std::int64_t>(row.result->weight) -
                                    static_cast<std::int64_t>(row.ref->weight));
    } else {
      line += "\t-\t-";
    }
    line += '\t' + row.agreement;
  }
  return line;
}

std::string grid_header(bool with_comparison) {
  std::string header = "m\theuristic\tword\tlength\tweight\tverified";
  if (with_comparison) header += "\tref_weight\tweight_delta\tagreement";
  return header;
}

// Synthesized words are re-verified before anything is printed; a mismatch
// here is an implementation bug, not an input problem.
bool self_check(const Automaton& aut, const SyncResult& result) {
  if (!result.synchronized) return false;
  if (!verify_sync_word(aut, result.word).synchronizing)
    throw std::logic_error("internal error: synthesized word failed verification");
  return true;
}

struct SyncArgs {
  std::string input;
  std::uint32_t m = 2;
  std::string heuristic;
  std::string format = "text";
  bool trace = false;
};

int cmd_sync(const SyncArgs& args, std::ostream& out) {
  Automaton aut = load_input(args.input);
  HeuristicKind kind = parse_heuristic(args.heuristic);
  Format format = parse_format(args.format);
  SyncResult result = approximate_weight_synch(aut, args.m, kind);
  bool verified = self_check(aut, result);

  ResultRow row{args.m, kind, &result, verified, nullptr, false, ""};
  switch (format) {
    case Format::Text:
      out << "m: " << args.m << "\n";
      out << "heuristic: " << heuristic_name(kind) << "\n";
      out << "word: " << display_word(result.word) << "\n";
      out << "length: " << result.length << "\n";
      out << "weight: " << result.weight << "\n";
      out << "verified: " << bool_name(verified) << "\n";
      if (args.trace)
        for (std::size_t i = 0; i < result.steps.size(); ++i) {
          const SyncStep& step = result.steps[i];
          out << "step " << (i + 1) << ": P=" << set_display(step.chosen_subset)
              << " w=" << step.word << " T=" << set_display(step.before) << " -> "
              << set_display(step.after) << "\n";
        }
      break;
    case Format::Json: {
      ordered_json object = row_to_json(row);
      if (args.trace) {
        ordered_json steps = ordered_json::array();
        for (const SyncStep& step : result.steps) {
          ordered_json item;
          item["subset"] = step.chosen_subset.to_string();
          item["word"] = step.word;
          item["before"] = step.before.to_string();
          item["after"] = step.after.to_string();
          steps.push_back(item);
        }
        object["steps"] = steps;
      }
      out << object.dump() << "\n";
      break;
    }
    case Format::Tsv:
      out << grid_header(false) << "\n" << row_to_tsv(row) << "\n";
      break;
  }
  return result.synchronized ? 0 : 2;
}

struct VerifyArgs {
  std::string input;
  std::string word;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  Automaton aut = load_input(args.input);
  Word word = word_from_cli(args.word);
  VerifyOutcome outcome = verify_sync_word(aut, word);
  std::uint64_t weight = word_weight(aut, word);

  Format format = parse_format(args.format);
  switch (format) {
    case Format::Text:
      out << "word: " << display_word(word) << "\n";
      out << "length: " << word.size() << "\n";
      out << "weight: " << weight << "\n";
      out << "synchronizing: " << bool_name(outcome.synchronizing) << "\n";
      if (outcome.synchronizing) {
        out << "target: " << outcome.target << "\n";
        out << "earliest synchronizing prefix: " << *outcome.earliest_sync_prefix << "\n";
      }
      break;
    case Format::Json: {
      ordered_json object;
      object["word"] = word;
      object["length"] = word.size();
      object["weight"] = weight;
      object["synchronizing"] = outcome.synchronizing;
      if (outcome.synchronizing) {
        object["target"] = outcome.target;
        object["earliest_sync_prefix"] = *outcome.earliest_sync_prefix;
      }
      out << object.dump() << "\n";
      break;
    }
    case Format::Tsv:
      out << "word\tlength\tweight\tsynchronizing\ttarget\n";
      out << display_word(word) << '\t' << word.size() << '\t' << weight << '\t'
          << bool_name(outcome.synchronizing) << '\t'
          << (outcome.synchronizing ? std::to_string(outcome.target) : std::string("-")) << "\n";
      break;
  }
  return outcome.synchronizing ? 0 : 2;
}

struct ExactArgs {
  std::string input;
  bool want_weight = false;
  bool want_length = false;
  std::uint32_t cap = kDefaultOracleCap;
  std::string format = "text";
};

int cmd_exact(const ExactArgs& args, std::ostream& out) {
  if (!args.want_weight && !args.want_length)
    throw std::invalid_argument("pass --weight and/or --length");
  Automaton aut = load_input(args.input);
  Format format = parse_format(args.format);

  std::optional<OracleResult> weight_result;
  std::optional<OracleResult> length_result;
  bool synchronizing = true;
  if (args.want_weight) {
    weight_result = min_weight_sync(aut, args.cap);
    synchronizing = weight_result.has_value();
  }
  if (args.want_length && synchronizing) {
    length_result = min_length_sync(aut, args.cap);
    synchronizing = length_result.has_value();
  }

  if (!synchronizing) {
    switch (format) {
      case Format::Text: out << "synchronizing: false\n"; break;
      case Format::Json: out << ordered_json{{"synchronizing", false}}.dump() << "\n"; break;
      case Format::Tsv: out << "synchronizing\nfalse\n"; break;
    }
    return 2;
  }

  switch (format) {
    case Format::Text:
      if (weight_result) {
        out << "min weight: " << weight_result->value << "\n";
        out << "witness: " << display_word(weight_result->word) << "\n";
      }
      if (length_result) {
        out << "min length: " << length_result->value << "\n";
        out << "witness: " << display_word(length_result->word) << "\n";
      }
      break;
    case Format::Json: {
      ordered_json object;
      if (weight_result) {
        object["min_weight"] = weight_result->value;
        object["min_weight_witness"] = weight_result->word;
      }
      if (length_result) {
        object["min_length"] = length_result->value;
        object["min_length_witness"] = length_result->word;
      }
      out << object.dump() << "\n";
      break;
    }
    case Format::Tsv:
      out << "query\tvalue\twitness\n";
      if (weight_result)
        out << "weight\t" << weight_result->value << '\t' << display_word(weight_result->word)
            << "\n";
      if (length_result)
        out << "length\t" << length_result->value << '\t' << display_word(length_result->word)
            << "\n";
      break;
  }
  return 0;
}

struct CheckArgs {
  std::string input;
  std::string format = "text";
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
  Automaton aut = load_input(args.input);
  bool result = is_synchronizing(aut);
  switch (parse_format(args.format)) {
    case Format::Text: out << "synchronizing: " << bool_name(result) << "\n"; break;
    case Format::Json: out << ordered_json{{"synchronizing", result}}.dump() << "\n"; break;
    case Format::Tsv: out << "synchronizing\n" << bool_name(result) << "\n"; break;
  }
  return result ? 0 : 2;
}

struct TableArgs {
  std::string input;
  std::string m_range = "2..6";
  std::string heuristics = "H1,H2,H3,H4";
  std::string format = "text";
  std::string compare_path;
};

int cmd_table(const TableArgs& args, std::ostream& out) {
  Automaton aut = load_input(args.input);
  std::vector<std::uint32_t> m_values = parse_m_range(args.m_range);
  std::vector<HeuristicKind> kinds = parse_heuristic_list(args.heuristics);
  Format format = parse_format(args.format);

  std::map<ReferenceKey, ReferenceRow> reference;
  bool with_comparison = !args.compare_path.empty();
  if (with_comparison) reference = load_reference_table(args.compare_path);

  std::vector<GridRow> grid = run_grid(aut, m_values, kinds);

  bool all_synchronized = true;
  std::vector<ResultRow> rows;
  rows.reserve(grid.size());
  for (const GridRow& grid_row : grid) {
    ResultRow row;
    row.m = grid_row.m;
    row.kind = grid_row.kind;
    row.result = &grid_row.result;
    row.verified = self_check(aut, grid_row.result);
    all_synchronized = all_synchronized && grid_row.result.synchronized;
    if (with_comparison) {
      row.have_agreement = true;
      auto it = reference.find({grid_row.m, std::string(heuristic_name(grid_row.kind))});
      if (it == reference.end()) {
        row.agreement = "none";
      } else {
        row.ref = &it->second;
        if (grid_row.result.word == it->second.word)
          row.agreement = "word-match";
        else if (grid_row.result.weight == it->second.weight)
          row.agreement = "weight-match";
        else if (grid_row.result.weight < it->second.weight)
          row.agreement = "better";
        else
          row.agreement = "worse";
      }
    }
    rows.push_back(row);
  }

  switch (format) {
    case Format::Text: {
      out << grid_header(with_comparison) << "\n";
      for (const ResultRow& row : rows) out << row_to_tsv(row) << "\n";
      std::size_t verified_count = 0;
      for (const ResultRow& row : rows) verified_count += row.verified ? 1 : 0;
      out << rows.size() << " rows, " << verified_count << " verified\n";
      if (with_comparison) {
        std::map<std::string, std::size_t> counts;
        for (const ResultRow& row : rows) ++counts[row.agreement];
        out << "agreement:";
        for (const auto& [name, count] : counts) out << " " << name << "=" << count;
        out << "\n";
      }
      break;
    }
    case Format::Json:
      for (const ResultRow& row : rows) out << row_to_json(row).dump() << "\n";
      break;
    case Format::Tsv:
      out << grid_header(with_comparison) << "\n";
      for (const ResultRow& row : rows) out << row_to_tsv(row) << "\n";
      break;
  }
  return all_synchronized ? 0 : 2;
}

struct GenArgs {
  std::string family;
  std::uint32_t n = 0;
  bool n_set = false;
  std::uint32_t letters = 2;
  std::uint32_t max_weight = 1;
  std::uint64_t seed = 0;
  bool emit_dot = false;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  std::optional<Automaton> aut;
  if (args.family == "paper:A") {
    aut = paper_automaton_A();
  } else if (args.family == "paper:B") {
    aut = paper_automaton_B();
  } else if (args.family == "cerny") {
    if (!args.n_set) throw std::invalid_argument("gen cerny requires --n");
    aut = cerny(args.n);
  } else if (args.family == "random") {
    if (!args.n_set) throw std::invalid_argument("gen random requires --n");
    GeneratorSpec spec;
    spec.family = Family::Random;
    spec.states = args.n;
    spec.letter_count = args.letters;
    spec.max_weight = args.max_weight;
    spec.seed = args.seed;
    aut = random_automaton(spec);
  } else {
    throw std::invalid_argument("unknown generator family '" + args.family +
                                "' (expected random, cerny, paper:A, or paper:B)");
  }
  out << (args.emit_dot ? to_dot(*aut) : serialize_automaton(*aut));
  return 0;
}

struct DumpWordsArgs {
  std::string input;
  std::uint32_t m = 2;
};

int cmd_dump_words(const DumpWordsArgs& args, std::ostream& out) {
  Automaton aut = load_input(args.input);
  out << dump_word_table_tsv(compute_words(aut, args.m));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"weighted synchronizing word toolkit"};
  app.require_subcommand(1);

  SyncArgs sync_args;
  CLI::App* sync = app.add_subcommand("sync", "synthesize a low-weight synchronizing word");
  sync->add_option("input", sync_args.input, "automaton file, paper:A, paper:B, or cerny:<n>")
      ->required();
  sync->add_option("--m", sync_args.m, "subset size bound (2..n)")->required();
  sync->add_option("--heuristic", sync_args.heuristic, "H1, H2, H3, or H4")->required();
  sync->add_option("--format", sync_args.format, "text, json, or tsv");
  sync->add_flag("--trace", sync_args.trace, "print the per-step trace");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "check whether a word synchronizes");
  verify->add_option("input", verify_args.input, "automaton file or built-in")->required();
  verify->add_option("word", verify_args.word, "candidate word; - for the empty word")->required();
  verify->add_option("--format", verify_args.format, "text, json, or tsv");

  ExactArgs exact_args;
  CLI::App* exact = app.add_subcommand("exact", "exact optima by brute-force search");
  exact->add_option("input", exact_args.input, "automaton file or built-in")->required();
  exact->add_flag("--weight", exact_args.want_weight, "minimum synchronizing weight");
  exact->add_flag("--length", exact_args.want_length, "minimum synchronizing length");
  exact->add_option("--cap", exact_args.cap, "state count cap for the search");
  exact->add_option("--format", exact_args.format, "text, json, or tsv");

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "decide synchronizability");
  check->add_option("input", check_args.input, "automaton file or built-in")->required();
  check->add_option("--format", check_args.format, "text, json, or tsv");

  TableArgs table_args;
  CLI::App* table = app.add_subcommand("table", "heuristic grid over m values");
  table->add_option("input", table_args.input, "automaton file or built-in")->required();
  table->add_option("--m", table_args.m_range, "m range, e.g. 2..6 or 3");
  table->add_option("--heuristics", table_args.heuristics, "comma list, e.g. H1,H2,H3,H4");
  table->add_option("--format", table_args.format, "text, json, or tsv");
  table->add_option("--compare", table_args.compare_path, "reference TSV to diff against");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "emit an automaton file");
  gen->add_option("family", gen_args.family, "random, cerny, paper:A, or paper:B")->required();
  gen->add_option("--n", gen_args.n, "state count")->each([&](const std::string&) {
    gen_args.n_set = true;
  });
  gen->add_option("--letters", gen_args.letters, "alphabet size (random)");
  gen->add_option("--max-weight", gen_args.max_weight, "maximum letter weight (random)");
  gen->add_option("--seed", gen_args.seed, "generator seed (random)");
  gen->add_flag("--emit-dot", gen_args.emit_dot, "emit Graphviz DOT instead of the file format");

  DumpWordsArgs dump_args;
  CLI::App* dump = app.add_subcommand("dump-words", "dump the word table as TSV");
  dump->add_option("input", dump_args.input, "automaton file or built-in")->required();
  dump->add_option("--m", dump_args.m, "subset size bound (2..n)")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("wsync");
  for (const std::string& arg : args) argv_storage.push_back(arg);
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& arg : argv_storage) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sync) return cmd_sync(sync_args, out);
    if (*verify) return cmd_verify(verify_args, out);
    if (*exact) return cmd_exact(exact_args, out);
    if (*check) return cmd_check(check_args, out);
    if (*table) return cmd_table(table_args, out);
    if (*gen) return cmd_gen(gen_args, out);
    if (*dump) return cmd_dump_words(dump_args, out);
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace wsync
