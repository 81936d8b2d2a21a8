// Copyright 2026 The Lexaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <utility>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "lexaug/analysis.h"
#include "lexaug/error.h"
#include "lexaug/metrics.h"
#include "lexaug/mixture.h"

namespace lexaug::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

using ordered_json = nlohmann::ordered_json;

// Where a subcommand writes its primary output. "-" is `out`.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path == "-" || path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::kIo, "cannot write " + path);
      stream_ = file_.get();
    }
  }

  std::ostream& stream() { return *stream_; }
  bool is_file() const { return file_ != nullptr; }
  const std::string& path() const { return path_; }

  void Close() {
    stream_->flush();
    if (file_) {
      file_->close();
      if (!*file_) throw Error(ErrorCode::kIo, "failed writing " + path_);
    }
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct LexiconSpec {
  std::string name;
  std::string path;
};

// "NAME=PATH", or a bare PATH whose file stem becomes the source name.
LexiconSpec ParseLexiconSpec(const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq != std::string::npos && eq > 0) {
    const std::string name = spec.substr(0, eq);
    const bool identifier = std::all_of(name.begin(), name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
    if (identifier) return {name, spec.substr(eq + 1)};
  }
  return {std::filesystem::path(spec).stem().string(), spec};
}

Lexicon LoadLexica(const std::vector<std::string>& specs) {
  Lexicon merged;
  for (const std::string& s : specs) {
    const LexiconSpec spec = ParseLexiconSpec(s);
    Lexicon lex = LoadLexicon(spec.path, spec.name);
    merged = merged.empty() ? std::move(lex) : Merge(merged, lex);
  }
  return merged;
}

std::vector<std::string> LexiconPaths(const std::vector<std::string>& specs) {
  std::vector<std::string> out;
  for (const std::string& s : specs) out.push_back(ParseLexiconSpec(s).path);
  return out;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> SplitCsvSet(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

void ApplySentinelOverrides(const std::vector<std::string>& overrides,
                            SentinelInventory& s) {
  for (const std::string& o : overrides) {
    const std::size_t eq = o.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig, "sentinel override must be KEY=VALUE: " + o);
    }
    s.Override(o.substr(0, eq), o.substr(eq + 1));
  }
  s.Validate();
}

// Fills options that were not given on the command line from a flat JSON
// object whose keys are long option names ('_' and '-' interchangeable).
void ApplyConfigFile(CLI::App& sub, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, path + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kConfig, path + ": not an object");
  for (const auto& [raw_key, value] : j.items()) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw Error(ErrorCode::kConfig, path + ": unknown key \"" + raw_key +
                                          "\" for " + sub.get_name());
    }
    if (opt->count() > 0) continue;  // command line wins
    auto to_string = [](const nlohmann::json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (value.is_array()) {
      for (const auto& v : value) opt->add_result(to_string(v));
    } else {
      opt->add_result(to_string(value));
    }
    opt->run_callback();
  }
}

ordered_json EchoOptions(const CLI::App& sub) {
  ordered_json cfg = ordered_json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config" || name == "manifest") continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (opt->get_expected_max() > 1) {
        cfg[name] = results;
      } else {
        cfg[name] = results.empty() ? "" : results.back();
      }
    } else {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

struct Manifest {
  ordered_json doc;

  Manifest(const std::string& command, const CLI::App& sub) {
    doc["tool"] = "lexaug";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["config"] = EchoOptions(sub);
    doc["inputs"] = ordered_json::array();
    doc["outputs"] = ordered_json::array();
  }

  void AddInput(const std::string& path) {
    doc["inputs"].push_back(
        {{"path", path},
         {"bytes", std::filesystem::file_size(path)},
         {"sha256", FileSha256(path)}});
  }

  void AddOutput(const Output& out) {
    if (!out.is_file()) return;
    doc["outputs"].push_back(
        {{"path", out.path()}, {"sha256", FileSha256(out.path())}});
  }

  // Written to `explicit_path`, else next to a file output, else nowhere.
  void Write(const std::string& explicit_path, const Output& out) const {
    std::string path = explicit_path;
    if (path.empty() && out.is_file()) path = out.path() + ".manifest.json";
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kIo, "cannot write manifest " + path);
    f << doc.dump(2) << '\n';
  }
};

void AddCommonOutputOptions(CLI::App* sub, std::string& out_path,
                            std::string& manifest_path) {
  sub->add_option("--out", out_path, "Output path ('-' for stdout)")
      ->capture_default_str();
  sub->add_option("--manifest", manifest_path,
                  "Run manifest path (default: <out>.manifest.json)");
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kConfig, what);
}

// --- augment -------------------------------------------------------------

struct AugmentArgs {
  std::string task;
  std::string corpus;
  std::vector<std::string> lexica;
  std::optional<std::uint64_t> seed;
  double p_tr = 0.4;
  double fraction = 0.5;
  double mask_fraction = 0.5;
  std::string sampling = "binomial";
  unsigned jobs = 1;
  std::size_t batch_size = 4096;
  std::string on_error = "abort";
  std::string emit = "all";
  std::vector<std::string> sentinels;
  std::string out = "-";
  std::string manifest;
  std::string config;
};

const std::map<std::string, AugmentTask> kAugmentTasks = {
    {"codeswitch-mono", AugmentTask::kCodeswitchMono},
    {"codeswitch-parallel", AugmentTask::kCodeswitchParallel},
    {"glowup-mono", AugmentTask::kGlowupMono},
    {"glowup-parallel", AugmentTask::kGlowupParallel},
};

CLI::App* AddAugment(CLI::App& app, AugmentArgs& a) {
  CLI::App* sub = app.add_subcommand("augment", "Write augmented training examples");
  sub->add_option("--task", a.task, "Augmentation task")
      ->check(CLI::IsMember({"codeswitch-mono", "codeswitch-parallel",
                             "glowup-mono", "glowup-parallel"}));
  sub->add_option("--corpus", a.corpus, "JSON-lines corpus");
  sub->add_option("--lexicon", a.lexica, "Lexicon TSV, optionally NAME=PATH");
  sub->add_option("--seed", a.seed, "Random seed (required)");
  sub->add_option("--p-tr", a.p_tr, "Per-token translation probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--fraction", a.fraction, "Share of records augmented")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--mask-fraction", a.mask_fraction, "MASS span fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--sampling", a.sampling, "Codeswitch token selection")
      ->check(CLI::IsMember({"binomial", "uniform"}))
      ->capture_default_str();
  sub->add_option("--jobs", a.jobs, "Worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  sub->add_option("--batch-size", a.batch_size, "Records per batch")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24))
      ->capture_default_str();
  sub->add_option("--on-error", a.on_error, "Bad-record policy")
      ->check(CLI::IsMember({"abort", "skip"}))
      ->capture_default_str();
  sub->add_option("--emit", a.emit, "Which branch to write")
      ->check(CLI::IsMember({"all", "augmented", "vanilla"}))
      ->capture_default_str();
  sub->add_option("--sentinel", a.sentinels, "Sentinel override KEY=VALUE");
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoAugment(const AugmentArgs& a, const CLI::App& sub, std::ostream& out,
              std::ostream& err) {
  Require(!a.task.empty(), "augment: --task is required");
  Require(!a.corpus.empty(), "augment: --corpus is required");
  Require(!a.lexica.empty(), "augment: at least one --lexicon is required");
  Require(a.seed.has_value(), "augment: --seed is required");

  AugmentConfig cfg;
  cfg.task = kAugmentTasks.at(a.task);
  cfg.seed = *a.seed;
  cfg.fraction = a.fraction;
  cfg.selection.p_tr = a.p_tr;
  cfg.selection.mode = a.sampling == "uniform" ? SelectionMode::kUniformCount
                                               : SelectionMode::kBinomialAdjusted;
  cfg.mask_fraction = a.mask_fraction;
  cfg.jobs = a.jobs;
  cfg.batch_size = a.batch_size;
  cfg.on_error = a.on_error == "skip" ? ErrorPolicy::kSkip : ErrorPolicy::kAbort;
  cfg.emit = a.emit == "augmented" ? Emit::kAugmented
             : a.emit == "vanilla" ? Emit::kVanilla
                                   : Emit::kAll;
  ApplySentinelOverrides(a.sentinels, cfg.sentinels);

  const Lexicon lex = LoadLexica(a.lexica);
  auto reader = CorpusReader::Open(a.corpus, KindFor(cfg.task), cfg.on_error);
  Output output(a.out, out);
  const AugmentStats stats = RunAugment(cfg, lex, *reader, output.stream());
  output.Close();

  for (const std::string& m : stats.messages) err << "warning: " << m << '\n';
  Manifest manifest("augment", sub);
  manifest.AddInput(a.corpus);
  for (const std::string& p : LexiconPaths(a.lexica)) manifest.AddInput(p);
  manifest.AddOutput(output);
  manifest.doc["stats"] = {{"records", stats.records},
                           {"augmented", stats.augmented},
                           {"vanilla", stats.vanilla},
                           {"dropped", stats.dropped},
                           {"lexicon_entries", lex.size()}};
  manifest.Write(a.manifest, output);
  return 0;
}

// --- token-pairs ---------------------------------------------------------

struct TokenPairArgs {
  std::vector<std::string> lexica;
  std::string langs;
  std::vector<std::string> sentinels;
  std::string out = "-";
  std::string manifest;
  std::string config;
};

CLI::App* AddTokenPairs(CLI::App& app, TokenPairArgs& a) {
  CLI::App* sub = app.add_subcommand("token-pairs",
                                     "Render lexicon entries as training pairs");
  sub->add_option("--lexicon", a.lexica, "Lexicon TSV, optionally NAME=PATH");
  sub->add_option("--langs", a.langs,
                  "Comma-separated languages; keep entries with either side listed");
  sub->add_option("--sentinel", a.sentinels, "Sentinel override KEY=VALUE");
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoTokenPairs(const TokenPairArgs& a, const CLI::App& sub, std::ostream& out) {
  Require(!a.lexica.empty(), "token-pairs: at least one --lexicon is required");
  SentinelInventory sentinels;
  ApplySentinelOverrides(a.sentinels, sentinels);
  const Lexicon lex = LoadLexica(a.lexica);
  std::optional<std::set<std::string>> filter;
  if (!a.langs.empty()) filter = SplitCsvSet(a.langs);

  Output output(a.out, out);
  std::size_t written = 0;
  TokenPairExamples(
      lex, filter,
      [&](const TrainingExample& ex) {
        output.stream() << ExampleToJson(ex) << '\n';
        ++written;
      },
      sentinels);
  output.Close();

  Manifest manifest("token-pairs", sub);
  for (const std::string& p : LexiconPaths(a.lexica)) manifest.AddInput(p);
  manifest.AddOutput(output);
  manifest.doc["stats"] = {{"examples", written}};
  manifest.Write(a.manifest, output);
  return 0;
}

// --- mix -----------------------------------------------------------------

struct MixArgs {
  std::string mono_aug = "none";
  std::string parallel_aug = "none";
  bool token_pairs = false;
  std::string weights;
  std::vector<std::string> streams;
  std::size_t count = 0;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::string manifest;
  std::string config;
};

CLI::App* AddMix(CLI::App& app, MixArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "mix", "Print the task schedule, or interleave example streams by it");
  sub->add_option("--mono-aug", a.mono_aug, "Monolingual augmentation")
      ->check(CLI::IsMember({"none", "codeswitch", "glowup"}))
      ->capture_default_str();
  sub->add_option("--parallel-aug", a.parallel_aug, "Parallel augmentation")
      ->check(CLI::IsMember({"none", "codeswitch", "glowup"}))
      ->capture_default_str();
  sub->add_flag("--token-pairs", a.token_pairs, "Add the token-pair task");
  sub->add_option("--weights", a.weights,
                  "Explicit weights: JSON object or path to one");
  sub->add_option("--streams", a.streams,
                  "Example files (JSON lines); grouped by their task field");
  sub->add_option("--count", a.count, "Number of examples to emit");
  sub->add_option("--seed", a.seed, "Random seed (required with --streams)");
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoMix(const MixArgs& a, const CLI::App& sub, std::ostream& out) {
  TaskWeights weights;
  if (!a.weights.empty()) {
    const bool inline_json = a.weights.find('{') != std::string::npos;
    weights = TaskWeights::FromJson(inline_json ? a.weights : ReadFile(a.weights));
  } else {
    ScheduleConfig sc;
    sc.mono_aug = *ParseAugmentKind(a.mono_aug);
    sc.parallel_aug = *ParseAugmentKind(a.parallel_aug);
    sc.token_pairs = a.token_pairs;
    weights = BuildSchedule(sc);
  }

  Output output(a.out, out);
  Manifest manifest("mix", sub);
  manifest.doc["schedule"] = ordered_json::parse(weights.ToJson());
  if (a.streams.empty()) {
    output.stream() << weights.ToJson() << '\n';
    output.Close();
    manifest.AddOutput(output);
    manifest.Write(a.manifest, output);
    return 0;
  }
  Require(a.seed.has_value(), "mix: --seed is required with --streams");
  Require(a.count > 0, "mix: --count must be positive with --streams");

  std::map<Task, std::vector<TrainingExample>> buckets;
  for (const std::string& path : a.streams) {
    std::size_t line_no = 0;
    for (const std::string& line : ReadLines(path)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        TrainingExample ex = ExampleFromJson(line);
        buckets[ex.task].push_back(std::move(ex));
      } catch (const Error& e) {
        throw Error(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what(),
                    line_no);
      }
    }
    manifest.AddInput(path);
  }
  std::map<Task, std::unique_ptr<ExampleStream>> streams;
  for (auto& [task, items] : buckets) {
    const auto stream_seed = StableHash(*a.seed, static_cast<std::uint64_t>(task));
    streams[task] = std::make_unique<CyclingStream>(std::move(items), stream_seed);
  }
  Interleaver mixer(std::move(streams), weights, *a.seed);
  for (std::size_t i = 0; i < a.count; ++i) {
    output.stream() << ExampleToJson(mixer.Next()) << '\n';
  }
  output.Close();
  manifest.AddOutput(output);
  manifest.Write(a.manifest, output);
  return 0;
}

// --- score ---------------------------------------------------------------

struct ScoreArgs {
  std::string hyp;
  std::string ref;
  std::string metric = "chrf";
  bool sentence = false;
  std::string format = "text";
  std::string out = "-";
  std::string manifest;
  std::string config;
};

CLI::App* AddScore(CLI::App& app, ScoreArgs& a) {
  CLI::App* sub = app.add_subcommand("score", "Corpus ChrF of line-aligned files");
  sub->add_option("--hyp", a.hyp, "Hypotheses, one per line");
  sub->add_option("--ref", a.ref, "References, one per line");
  sub->add_option("--metric", a.metric, "Metric")
      ->check(CLI::IsMember({"chrf"}))
      ->capture_default_str();
  sub->add_flag("--sentence", a.sentence, "Also report per-line scores");
  sub->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoScore(const ScoreArgs& a, const CLI::App& sub, std::ostream& out) {
  Require(!a.hyp.empty() && !a.ref.empty(), "score: --hyp and --ref are required");
  const auto hyps = ReadLines(a.hyp);
  const auto refs = ReadLines(a.ref);
  const ChrfParams params;
  const double corpus = CorpusChrf(hyps, refs, params);

  Output output(a.out, out);
  std::ostream& os = output.stream();
  if (a.format == "json") {
    ordered_json j;
    j["metric"] = "chrF2";
    j["signature"] = params.Signature();
    j["n"] = hyps.size();
    j["score"] = corpus;
    if (a.sentence) {
      j["sentences"] = ordered_json::array();
      for (std::size_t i = 0; i < hyps.size(); ++i) {
        j["sentences"].push_back(Chrf(hyps[i], refs[i], params));
      }
    }
    os << j.dump() << '\n';
  } else {
    if (a.sentence) {
      for (std::size_t i = 0; i < hyps.size(); ++i) {
        os << (i + 1) << '\t' << std::fixed << std::setprecision(4)
           << Chrf(hyps[i], refs[i], params) << '\n';
      }
    }
    os << "chrF2|" << params.Signature() << " = " << std::fixed
       << std::setprecision(4) << corpus << '\n';
  }
  output.Close();
  Manifest manifest("score", sub);
  manifest.AddInput(a.hyp);
  manifest.AddInput(a.ref);
  manifest.AddOutput(output);
  manifest.Write(a.manifest, output);
  return 0;
}

// --- diagnose / hit-rate -------------------------------------------------

struct DiagnoseArgs {
  std::string rows;
  std::string format = "text";
  std::string out = "-";
  std::string manifest;
  std::string config;
};

CLI::App* AddDiagnose(CLI::App& app, DiagnoseArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "diagnose", "Null-output, copy and repetition rates of evaluation rows");
  sub->add_option("--rows", a.rows, "Eval rows (JSON lines)");
  sub->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoDiagnose(const DiagnoseArgs& a, const CLI::App& sub, std::ostream& out) {
  Require(!a.rows.empty(), "diagnose: --rows is required");
  const auto rows = LoadEvalRows(a.rows);
  const ErrorReport report = DiagnoseCorpus(rows);
  Output output(a.out, out);
  output.stream() << (a.format == "json" ? report.ToJson() + "\n" : report.ToText());
  output.Close();
  Manifest manifest("diagnose", sub);
  manifest.AddInput(a.rows);
  manifest.AddOutput(output);
  manifest.Write(a.manifest, output);
  return 0;
}

struct HitRateArgs {
  std::string rows;
  std::string tokens;
  std::string out = "-";
  std::string manifest;
  std::string config;
};

CLI::App* AddHitRate(CLI::App& app, HitRateArgs& a) {
  CLI::App* sub = app.add_subcommand("hit-rate", "Token hit-rate of evaluation rows");
  sub->add_option("--rows", a.rows, "Eval rows (JSON lines)");
  sub->add_option("--tokens", a.tokens, "Watched tokens, one per line");
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoHitRate(const HitRateArgs& a, const CLI::App& sub, std::ostream& out) {
  Require(!a.rows.empty() && !a.tokens.empty(),
          "hit-rate: --rows and --tokens are required");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (EvalRow& r : LoadEvalRows(a.rows)) {
    pairs.emplace_back(std::move(r.hypothesis), std::move(r.reference));
  }
  std::set<std::string> tokens;
  for (const std::string& t : ReadLines(a.tokens)) {
    if (!t.empty()) tokens.insert(t);
  }
  const HitRate hr = TokenHitRate(pairs, tokens);
  ordered_json j;
  j["rate"] = hr.rate ? ordered_json(*hr.rate) : ordered_json(nullptr);
  j["relevant"] = hr.relevant;
  j["hits"] = hr.hits;
  Output output(a.out, out);
  output.stream() << j.dump() << '\n';
  output.Close();
  Manifest manifest("hit-rate", sub);
  manifest.AddInput(a.rows);
  manifest.AddInput(a.tokens);
  manifest.AddOutput(output);
  manifest.Write(a.manifest, output);
  return 0;
}

// --- regress / lexicon-stats ---------------------------------------------

struct RegressArgs {
  std::string table;
  std::string out = "-";
  std::string manifest;
  std::string config;
};

CLI::App* AddRegress(CLI::App& app, RegressArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "regress", "OLS of delta ChrF on lexicon and monolingual counts (URLs)");
  sub->add_option("--table", a.table,
                  "CSV: lang,delta_chrf,n_panlex,n_gatitos,n_mono,class");
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoRegress(const RegressArgs& a, const CLI::App& sub, std::ostream& out) {
  Require(!a.table.empty(), "regress: --table is required");
  const auto rows = LoadLangRows(a.table);
  const RegressionReport report = RegressDeltaChrf(rows);
  Output output(a.out, out);
  output.stream() << report.ToJson() << '\n';
  output.Close();
  Manifest manifest("regress", sub);
  manifest.AddInput(a.table);
  manifest.AddOutput(output);
  manifest.Write(a.manifest, output);
  return 0;
}

struct LexiconStatsArgs {
  std::vector<std::string> lexica;
  std::string lang;
  std::string out = "-";
  std::string manifest;
  std::string config;
};

CLI::App* AddLexiconStats(CLI::App& app, LexiconStatsArgs& a) {
  CLI::App* sub = app.add_subcommand("lexicon-stats",
                                     "Entry counts per language pair and source");
  sub->add_option("--lexicon", a.lexica, "Lexicon TSV, optionally NAME=PATH");
  sub->add_option("--lang", a.lang, "Only report this language");
  AddCommonOutputOptions(sub, a.out, a.manifest);
  sub->add_option("--config", a.config, "JSON config file");
  return sub;
}

int DoLexiconStats(const LexiconStatsArgs& a, const CLI::App& sub,
                   std::ostream& out) {
  Require(!a.lexica.empty(), "lexicon-stats: at least one --lexicon is required");
  const Lexicon lex = LoadLexica(a.lexica);
  ordered_json j;
  j["entries"] = lex.size();
  ordered_json pairs = ordered_json::array();
  std::set<std::string> langs;
  for (const auto& [key, count] : lex.pair_counts()) {
    if (!a.lang.empty() && key.first != a.lang && key.second != a.lang) continue;
    pairs.push_back({{"src_lang", key.first}, {"tgt_lang", key.second}, {"count", count}});
    langs.insert(key.first);
    langs.insert(key.second);
  }
  j["pairs"] = pairs;
  if (!a.lang.empty()) langs = {a.lang};
  ordered_json per_lang = ordered_json::object();
  for (const std::string& lang : langs) {
    const EntryCounts c = lex.CountsFor(lang);
    per_lang[lang] = {{"panlex", c.panlex}, {"gatitos", c.gatitos}, {"other", c.other}};
  }
  j["languages"] = per_lang;
  Output output(a.out, out);
  output.stream() << j.dump(2) << '\n';
  output.Close();
  Manifest manifest("lexicon-stats", sub);
  for (const std::string& p : LexiconPaths(a.lexica)) manifest.AddInput(p);
  manifest.AddOutput(output);
  manifest.Write(a.manifest, output);
  return 0;
}

// Output for one record, computed on a worker thread.
struct Slot {
  std::optional<CorpusItem> item;
  std::size_t line = 0;
  std::string json;
  bool augmented = false;
  bool skipped_by_emit = false;
  std::optional<Error> error;
};

void ProcessSlot(const AugmentConfig& cfg, const Lexicon& lex, Slot& slot) {
  try {
    const std::uint64_t id = std::visit([](const auto& x) { return x.id; }, *slot.item);
    Rng rng = DeriveRng(cfg.seed, id);
    slot.augmented = AssignBranch(id, cfg.seed, cfg.fraction) == Branch::kAugment;
    if ((cfg.emit == Emit::kAugmented && !slot.augmented) ||
        (cfg.emit == Emit::kVanilla && slot.augmented)) {
      slot.skipped_by_emit = true;
      return;
    }
    const SentinelInventory& s = cfg.sentinels;
    TrainingExample ex;
    if (const auto* rec = std::get_if<Record>(&*slot.item)) {
      CheckNoSentinels(rec->text, s);
      if (!slot.augmented) {
        ex = MassExample(*rec, rng, s, cfg.mask_fraction);
      } else if (cfg.task == AugmentTask::kCodeswitchMono) {
        ex = CodeswitchMono(*rec, lex, cfg.selection, rng, s);
      } else {
        ex = GlowupMono(*rec, lex, rng, s, cfg.mask_fraction);
      }
    } else {
      const auto& pair = std::get<SentencePair>(*slot.item);
      CheckNoSentinels(pair.src.text, s);
      CheckNoSentinels(pair.tgt.text, s);
      if (!slot.augmented) {
        ex = TranslationExample(pair, s);
      } else if (cfg.task == AugmentTask::kCodeswitchParallel) {
        ex = CodeswitchParallel(pair, lex, cfg.selection, rng, s);
      } else {
        ex = GlowupParallel(pair, lex, rng, s);
      }
    }
    ValidateExample(ex, s);
    slot.json = ExampleToJson(ex);
  } catch (const Error& e) {
    slot.error = e;
  }
}

}  // namespace

CorpusKind KindFor(AugmentTask task) {
  return task == AugmentTask::kCodeswitchMono || task == AugmentTask::kGlowupMono
             ? CorpusKind::kMono
             : CorpusKind::kParallel;
}

AugmentStats RunAugment(const AugmentConfig& config, const Lexicon& lex,
                        CorpusReader& reader, std::ostream& out) {
  config.selection.Validate();
  config.sentinels.Validate();
  if (reader.kind() != KindFor(config.task)) {
    throw Error(ErrorCode::kConfig, "corpus kind does not match the task");
  }
  AssignBranch(0, config.seed, config.fraction);  // validates the fraction

  AugmentStats stats;
  const unsigned jobs = std::max(1u, config.jobs);
  std::vector<Slot> batch;
  batch.reserve(config.batch_size);
  bool done = false;
  // A reader error is raised only after the records before it are handled,
  // so the first bad line in file order is the one reported.
  std::exception_ptr pending;
  while (!done) {
    batch.clear();
    while (batch.size() < config.batch_size) {
      std::optional<CorpusItem> item;
      try {
        item = reader.Next();
      } catch (const Error&) {
        pending = std::current_exception();
      }
      if (!item) {
        done = true;
        break;
      }
      Slot slot;
      slot.item = std::move(item);
      slot.line = reader.line_number();
      batch.push_back(std::move(slot));
    }
    if (batch.empty()) {
      if (pending) std::rethrow_exception(pending);
      break;
    }

    if (jobs == 1 || batch.size() == 1) {
      for (Slot& slot : batch) ProcessSlot(config, lex, slot);
    } else {
      std::vector<std::jthread> workers;
      const unsigned n = std::min<std::size_t>(jobs, batch.size());
      for (unsigned w = 0; w < n; ++w) {
        workers.emplace_back([&, w] {
          for (std::size_t i = w; i < batch.size(); i += n) {
            ProcessSlot(config, lex, batch[i]);
          }
        });
      }
    }

    for (const Slot& slot : batch) {
      ++stats.records;
      if (slot.error) {
        const std::string message = reader.source_name() + ":" +
                                    std::to_string(slot.line) + ": " +
                                    slot.error->what();
        if (config.on_error == ErrorPolicy::kAbort) {
          throw Error(slot.error->code(), message, slot.line);
        }
        ++stats.dropped;
        if (stats.messages.size() < 100) stats.messages.push_back(message);
        continue;
      }
      (slot.augmented ? stats.augmented : stats.vanilla) += 1;
      if (slot.skipped_by_emit) continue;
      out << slot.json << '\n';
    }
    if (pending) std::rethrow_exception(pending);
  }
  stats.dropped += reader.skipped();
  for (const std::string& m : reader.skipped_messages()) {
    if (stats.messages.size() < 100) stats.messages.push_back(m);
  }
  return stats;
}

std::string FileSha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 init failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"lexaug: lexical augmentation and MT diagnostics", "lexaug"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  AugmentArgs augment;
  TokenPairArgs token_pairs;
  MixArgs mix;
  ScoreArgs score;
  DiagnoseArgs diagnose;
  HitRateArgs hit_rate;
  RegressArgs regress;
  LexiconStatsArgs lexicon_stats;

  struct Command {
    CLI::App* sub;
    const std::string* config;
    std::function<int()> run;
  };
  std::vector<Command> commands;
  {
    CLI::App* s = AddAugment(app, augment);
    commands.push_back({s, &augment.config,
                        [&, s] { return DoAugment(augment, *s, out, err); }});
    s = AddTokenPairs(app, token_pairs);
    commands.push_back({s, &token_pairs.config,
                        [&, s] { return DoTokenPairs(token_pairs, *s, out); }});
    s = AddMix(app, mix);
    commands.push_back({s, &mix.config, [&, s] { return DoMix(mix, *s, out); }});
    s = AddScore(app, score);
    commands.push_back({s, &score.config, [&, s] { return DoScore(score, *s, out); }});
    s = AddDiagnose(app, diagnose);
    commands.push_back({s, &diagnose.config,
                        [&, s] { return DoDiagnose(diagnose, *s, out); }});
    s = AddHitRate(app, hit_rate);
    commands.push_back({s, &hit_rate.config,
                        [&, s] { return DoHitRate(hit_rate, *s, out); }});
    s = AddRegress(app, regress);
    commands.push_back({s, &regress.config,
                        [&, s] { return DoRegress(regress, *s, out); }});
    s = AddLexiconStats(app, lexicon_stats);
    commands.push_back({s, &lexicon_stats.config,
                        [&, s] { return DoLexiconStats(lexicon_stats, *s, out); }});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  for (const Command& c : commands) {
    if (!c.sub->parsed()) continue;
    try {
      if (!c.config->empty()) ApplyConfigFile(*c.sub, *c.config);
      return c.run();
    } catch (const Error& e) {
      err << "lexaug " << c.sub->get_name() << ": " << ErrorCodeName(e.code())
          << ": " << e.what() << '\n';
      return e.code() == ErrorCode::kConfig ? 2 : 1;
    } catch (const CLI::Error& e) {
      err << "lexaug " << c.sub->get_name() << ": " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      err << "lexaug " << c.sub->get_name() << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace lexaug::cli
