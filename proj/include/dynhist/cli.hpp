#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dynhist/cooccurrence.hpp"
#include "dynhist/corpus.hpp"
#include "dynhist/diachronic.hpp"
#include "dynhist/error.hpp"
#include "dynhist/focus.hpp"
#include "dynhist/index_io.hpp"
#include "dynhist/ingest.hpp"
#include "dynhist/keyness.hpp"
#include "dynhist/lexicon.hpp"
#include "dynhist/stats.hpp"
#include "dynhist/topics.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist::cli {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr const char* kIndexEnv = "DYNHIST_INDEX";

// Flat key=value configuration. Keys are long option names without dashes;
// '#' starts a comment line.
inline std::map<std::string, std::string> parse_config(std::string_view content) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  while (!content.empty()) {
    ++line_no;
    const auto nl = content.find('\n');
    std::string_view line = content.substr(0, nl);
    content.remove_prefix(nl == std::string_view::npos ? content.size() : nl + 1);
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

// Stop-character file: every non-space character outside '#' comment lines.
inline std::u32string parse_stop_chars(std::string_view content) {
  std::u32string filtered;
  bool comment = false;
  bool line_start = true;
  for (char32_t ch : utf8::decode(content)) {
    if (line_start) comment = ch == U'#';
    line_start = ch == U'\n';
    if (comment || charclass::is_space(ch)) continue;
    filtered.push_back(ch);
  }
  return filtered;
}

namespace detail {

struct Options {
  unsigned jobs = 1;
  std::string config;
  std::string input, output, index, lexicon_file, out, term, stop_chars_file;
  std::string sentence_delims = "。！？；";
  std::string keep_chars;
  std::string unit = "sentence";
  std::string window = "sentence";
  std::string measure = "chi2";
  std::uint64_t min_corpus = 10;
  std::size_t min_targets = 5;
  std::uint64_t cutoff = 4;
  std::uint64_t scale = 100000;
  std::uint64_t min_freq = 5;
  std::size_t top = 30;
  std::size_t k = 5;
  std::size_t iters = 1000;
  std::uint64_t seed = 42;
  double alpha = -1.0;
  double beta = 0.01;
  bool directional_only = false;
  bool token_pairs = false;
  bool alphabetical = false;
};

inline std::string find_config_arg(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return {};
}

inline std::filesystem::path require_dir(const std::string& path, std::string_view what) {
  if (path.empty()) throw UsageError(std::string(what) + " is required");
  if (!std::filesystem::is_directory(path)) {
    throw Error(std::string(what) + " does not exist or is not a directory: " + path);
  }
  return path;
}

inline std::filesystem::path require_file(const std::string& path, std::string_view what) {
  if (path.empty()) throw UsageError(std::string(what) + " is required");
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(std::string(what) + " does not exist: " + path);
  }
  return path;
}

inline std::u32string require_term(const std::string& term) {
  if (term.empty()) throw UsageError("--term is required");
  std::u32string t;
  try {
    t = utf8::decode(term);
  } catch (const IngestError& e) {
    throw UsageError(std::string("--term: ") + e.what());
  }
  return t;
}

// Writes to `path`, or to `out` when path is "-".
inline void emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty()) throw UsageError("--out is required");
  if (path == "-") {
    out << content;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  write_file(p, content);
}

inline std::string coverage_tsv(const std::vector<TermCoverage>& rows, const IndexedCorpus& corpus) {
  std::string out = "term\tgender";
  for (const auto& h : corpus.histories()) out += "\t" + h.name;
  out += "\ttotal\thistories_present\n";
  for (const auto& r : rows) {
    out += utf8::encode(r.term);
    out += '\t';
    out += to_string(r.gender);
    for (auto c : r.per_history) {
      out += '\t';
      tsv::append_int(out, c);
    }
    out += '\t';
    tsv::append_int(out, r.total);
    out += '\t';
    tsv::append_int(out, r.histories_present);
    out += '\n';
  }
  return out;
}

inline std::string connectivity_tsv(const ConnectivityReport& report) {
  std::string out = "target\tlinked_rows\tfraction\tclass\n";
  for (const auto& t : report.targets) {
    out += utf8::encode(t.target);
    out += '\t';
    tsv::append_int(out, t.linked_rows);
    out += '\t';
    out += tsv::fixed(t.fraction);
    out += '\t';
    out += to_string(t.connectivity);
    out += '\n';
  }
  return out;
}

class SummaryWriter {
 public:
  template <typename T>
  void add(const std::string& key, const T& value) {
    out_ += key;
    out_ += '\t';
    if constexpr (std::is_floating_point_v<T>) {
      out_ += tsv::fixed(value);
    } else if constexpr (std::is_integral_v<T>) {
      tsv::append_int(out_, value);
    } else {
      out_ += value;
    }
    out_ += '\n';
  }
  const std::string& str() const { return out_; }

 private:
  std::string out_ = "key\tvalue\n";
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  detail::Options o;
  CLI::App app{"Corpus toolkit for character-indexed Classical Chinese histories", "dynhist"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.add_option("--jobs", o.jobs, "Worker threads (0 = one per core)");
  app.add_option("--config", o.config, "key=value defaults; command-line flags win");

  auto add_index = [&](CLI::App* sub) {
    sub->add_option("--index", o.index, "Index directory")->envname(kIndexEnv);
  };
  auto add_out = [&](CLI::App* sub, std::string help) {
    sub->add_option("--out", o.out, std::move(help));
  };

  auto* ingest = app.add_subcommand("ingest", "Convert NN_name_full.txt files into index files");
  ingest->add_option("--input", o.input, "Directory of raw history files");
  ingest->add_option("--output", o.output, "Directory for index files");
  ingest->add_option("--sentence-delims", o.sentence_delims, "Sentence-final characters");
  ingest->add_option("--keep-chars", o.keep_chars, "Characters never stripped as punctuation");

  auto* stats = app.add_subcommand("stats", "Per-history character and type counts");
  add_index(stats);
  add_out(stats, "Output TSV ('-' for stdout)");

  auto* lexicon = app.add_subcommand("lexicon", "Gender-term lexicon tools");
  lexicon->require_subcommand(1);
  auto* validate = lexicon->add_subcommand("validate", "Load a lexicon and report corpus coverage");
  validate->add_option("--file", o.lexicon_file, "Lexicon TSV");
  add_index(validate);
  add_out(validate, "Coverage TSV ('-' for stdout); optional");

  auto* cooccur = app.add_subcommand("cooccur", "Synoptic co-occurrence matrix");
  add_index(cooccur);
  cooccur->add_option("--lexicon", o.lexicon_file, "Lexicon TSV");
  cooccur->add_option("--unit", o.unit, "sentence or paragraph");
  cooccur->add_option("--min-corpus", o.min_corpus, "Minimum corpus frequency of a context row");
  cooccur->add_option("--min-targets", o.min_targets, "Minimum number of linked targets per row");
  cooccur->add_flag("--token-pairs", o.token_pairs, "Count token pairs instead of units");
  add_out(cooccur, "Matrix TSV ('-' for stdout)");

  auto* trend = app.add_subcommand("trend", "Diachronic pair series with slope classes");
  add_index(trend);
  trend->add_option("--lexicon", o.lexicon_file, "Lexicon TSV");
  trend->add_option("--unit", o.unit, "sentence or paragraph");
  trend->add_option("--cutoff", o.cutoff, "Keep pairs whose count exceeds this in some history");
  trend->add_option("--scale", o.scale, "Normalization factor");
  trend->add_flag("--directional-only", o.directional_only, "Only rows classed up or down");
  add_out(trend, "Report TSV ('-' for stdout)");

  auto* focus = app.add_subcommand("focus", "Dump the focus corpus of a term");
  add_index(focus);
  focus->add_option("--term", o.term, "Target term");
  focus->add_option("--window", o.window, "sentence or paragraph");
  add_out(focus, "Output text ('-' for stdout)");

  auto* keyness = app.add_subcommand("keyness", "Keyword table of a focus corpus");
  add_index(keyness);
  keyness->add_option("--term", o.term, "Target term");
  keyness->add_option("--window", o.window, "sentence or paragraph");
  keyness->add_option("--measure", o.measure, "chi2 or g2");
  keyness->add_option("--min-freq", o.min_freq, "Minimum focus frequency");
  keyness->add_option("--top", o.top, "Rows to keep");
  keyness->add_flag("--alphabetical", o.alphabetical, "Order the selected rows by code point");
  add_out(keyness, "Output TSV ('-' for stdout)");

  auto* topics = app.add_subcommand("topics", "LDA topics over a focus corpus");
  add_index(topics);
  topics->add_option("--term", o.term, "Target term");
  topics->add_option("--window", o.window, "sentence or paragraph");
  topics->add_option("--k", o.k, "Number of topics");
  topics->add_option("--iters", o.iters, "Gibbs sweeps");
  topics->add_option("--seed", o.seed, "Random seed");
  topics->add_option("--alpha", o.alpha, "Document-topic prior (<= 0: 50/k)");
  topics->add_option("--beta", o.beta, "Topic-character prior");
  topics->add_option("--min-freq", o.min_freq, "Minimum focus frequency of a character");
  topics->add_option("--stop-chars", o.stop_chars_file, "Stop-character file");
  add_out(topics, "Output TSV ('-' for stdout)");

  auto* report = app.add_subcommand("report", "Matrix, trends and keywords for every lexicon term");
  add_index(report);
  report->add_option("--lexicon", o.lexicon_file, "Lexicon TSV");
  report->add_option("--measure", o.measure, "chi2 or g2");
  report->add_option("--min-corpus", o.min_corpus, "Matrix row cutoff: corpus frequency");
  report->add_option("--min-targets", o.min_targets, "Matrix row cutoff: linked targets");
  report->add_option("--cutoff", o.cutoff, "Trend cutoff");
  report->add_option("--scale", o.scale, "Trend normalization factor");
  report->add_option("--min-freq", o.min_freq, "Keyness minimum focus frequency");
  report->add_option("--top", o.top, "Keyness rows per term");
  report->add_option("--out", o.out, "Output directory");

  try {
    const std::string config_path = detail::find_config_arg(args);
    if (!config_path.empty()) {
      if (!std::filesystem::is_regular_file(config_path)) {
        throw Error("config file does not exist: " + config_path);
      }
      const auto config = parse_config(read_file(config_path));
      std::vector<CLI::App*> apps{&app};
      for (std::size_t i = 0; i < apps.size(); ++i) {
        for (auto* sub : apps[i]->get_subcommands({})) apps.push_back(sub);
      }
      std::set<std::string> used;
      for (auto* a : apps) {
        for (auto* opt : a->get_options()) {
          const auto it = config.find(opt->get_single_name());
          if (it == config.end() || it->first == "config") continue;
          opt->default_val(it->second);
          used.insert(it->first);
        }
      }
      for (const auto& [key, value] : config) {
        if (!used.contains(key) && key != "config") throw UsageError("unknown config key '" + key + "'");
      }
    }

    std::vector<const char*> argv{"dynhist"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const UsageError& e) {
    err << "dynhist: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "dynhist: " << e.what() << '\n';
    return 1;
  }

  const Parallelism budget{o.jobs};
  try {
    if (ingest->parsed()) {
      if (o.output.empty()) throw UsageError("--output is required");
      const auto input = detail::require_dir(o.input, "--input");
      IngestConfig cfg;
      cfg.sentence_delims = utf8::decode(o.sentence_delims);
      cfg.keep_chars = utf8::decode(o.keep_chars);
      const auto summaries = ingest_directory(input, o.output, cfg, budget);
      for (const auto& s : summaries) {
        out << index_file_name(s.history.id, s.history.name) << '\t' << s.records << '\n';
        for (const auto& w : s.warnings) {
          err << "warning: " << s.history.name << " line " << w.line << ": " << w.message << '\n';
        }
      }
      return 0;
    }

    const auto index = detail::require_dir(o.index, "--index");
    const IndexedCorpus corpus = load_index_directory(index, budget);

    if (stats->parsed()) {
      detail::emit(o.out, stats_tsv(corpus_stats(corpus)), out);
    } else if (validate->parsed()) {
      const Lexicon lex = load_lexicon(detail::require_file(o.lexicon_file, "--file"));
      out << "male\t" << lex.male_terms().size() << "\nfemale\t" << lex.female_terms().size()
          << '\n';
      if (!o.out.empty()) detail::emit(o.out, detail::coverage_tsv(coverage_report(lex, corpus), corpus), out);
    } else if (cooccur->parsed()) {
      const Lexicon lex = load_lexicon(detail::require_file(o.lexicon_file, "--lexicon"));
      const auto m = build_matrix(corpus, lex, parse_window_unit(o.unit), {o.min_corpus, o.min_targets},
                                  o.token_pairs ? CellMode::token_pairs : CellMode::unit_presence,
                                  budget);
      detail::emit(o.out, matrix_tsv(m), out);
    } else if (trend->parsed()) {
      const Lexicon lex = load_lexicon(detail::require_file(o.lexicon_file, "--lexicon"));
      const auto r = trend_report(corpus, lex, parse_window_unit(o.unit),
                                  TrendOptions{o.cutoff, o.scale, CellMode::unit_presence}, budget);
      detail::emit(o.out, trend_tsv(r, o.directional_only), out);
    } else if (focus->parsed()) {
      const auto split = extract_focus(corpus, detail::require_term(o.term), parse_window_unit(o.window));
      detail::emit(o.out, focus_dump(split), out);
    } else if (keyness->parsed()) {
      const auto measure = parse_measure(o.measure);
      const auto split = extract_focus(corpus, detail::require_term(o.term), parse_window_unit(o.window));
      const auto table = keyword_table(split, measure, {o.min_freq, o.top});
      const auto rows = o.alphabetical ? table.alphabetical() : table.ranked;
      detail::emit(o.out, keyword_tsv(rows), out);
    } else if (topics->parsed()) {
      std::u32string stop;
      if (!o.stop_chars_file.empty()) {
        stop = parse_stop_chars(read_file(detail::require_file(o.stop_chars_file, "--stop-chars")));
      }
      const auto split = extract_focus(corpus, detail::require_term(o.term), parse_window_unit(o.window));
      const auto docs = prepare_documents(split, stop, o.min_freq);
      const auto model = lda_gibbs(docs, LdaConfig{o.k, o.alpha, o.beta, o.iters, o.seed, 10});
      detail::emit(o.out, topics_tsv(model), out);
    } else if (report->parsed()) {
      if (o.out.empty() || o.out == "-") throw UsageError("report needs --out <directory>");
      const Lexicon lex = load_lexicon(detail::require_file(o.lexicon_file, "--lexicon"));
      const auto measure = parse_measure(o.measure);
      const std::filesystem::path dir(o.out);
      std::filesystem::create_directories(dir / "keyness");

      detail::SummaryWriter summary;
      const auto st = corpus_stats(corpus);
      write_file(dir / "stats.tsv", stats_tsv(st));
      summary.add("chars_total", st.total_chars);
      summary.add("types_total", st.total_types);
      summary.add("male_terms", lex.male_terms().size());
      summary.add("female_terms", lex.female_terms().size());

      for (const WindowUnit unit : {WindowUnit::sentence, WindowUnit::paragraph}) {
        const std::string u(to_string(unit));
        const auto cov = gender_unit_coverage(corpus, lex, unit);
        summary.add(u + ".units_total", cov.units_total);
        summary.add(u + ".with_female", cov.with_female);
        summary.add(u + ".with_male", cov.with_male);
        summary.add(u + ".with_both", cov.with_both);
        summary.add(u + ".female_only_fraction", cov.female_only_fraction);

        const auto m = build_matrix(corpus, lex, unit, {o.min_corpus, o.min_targets},
                                    CellMode::unit_presence, budget);
        write_file(dir / ("cooccur_" + u + ".tsv"), matrix_tsv(m));
        summary.add(u + ".candidate_contexts", m.candidate_contexts);
        summary.add(u + ".context_rows", m.rows());
        const auto shared = shared_context(m, lex.male_terms(), lex.female_terms());
        summary.add(u + ".male_only_contexts", shared.male_only);
        summary.add(u + ".female_only_contexts", shared.female_only);
        summary.add(u + ".shared_contexts", shared.shared);
        summary.add(u + ".male_only_fraction", shared.male_only_fraction);
        const auto conn = classify_connectivity(m);
        write_file(dir / ("connectivity_" + u + ".tsv"), detail::connectivity_tsv(conn));
        summary.add(u + ".hub_rows", conn.hub_rows);
        summary.add(u + ".hub_fraction", conn.hub_fraction);
        std::string stars;
        for (const auto& t : conn.targets) {
          if (t.connectivity == Connectivity::star) stars += utf8::encode(t.target);
        }
        summary.add(u + ".star_targets", stars);

        const auto tr = trend_report(corpus, lex, unit,
                                     TrendOptions{o.cutoff, o.scale, CellMode::unit_presence}, budget);
        write_file(dir / ("trend_" + u + ".tsv"), trend_tsv(tr));
        write_file(dir / ("trend_" + u + "_directional.tsv"), trend_tsv(tr, true));
        summary.add(u + ".trend_nonzero_pairs", tr.nonzero_pairs);
        summary.add(u + ".trend_rows", tr.rows.size());
        summary.add(u + ".trend_directional_rows", tr.directional().size());
      }

      const auto terms = lex.all_terms();
      parallel_for(terms.size(), budget, [&](std::size_t i) {
        const auto split = extract_focus(corpus, terms[i], WindowUnit::sentence);
        const auto table = keyword_table(split, measure, {o.min_freq, o.top});
        write_file(dir / "keyness" /
                       (utf8::encode(terms[i]) + "_" + std::string(to_string(measure)) + ".tsv"),
                   keyword_tsv(table.ranked));
      });
      summary.add("keyness_tables", terms.size());
      write_file(dir / "summary.tsv", summary.str());
    }
    return 0;
  } catch (const UsageError& e) {
    err << "dynhist: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "dynhist: " << e.what() << '\n';
    return 1;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace dynhist::cli
