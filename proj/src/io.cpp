#include "fusegraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "fusegraph/error.hpp"
#include "fusegraph/parallel.hpp"
#include "fusegraph/retrieval.hpp"

namespace fusegraph {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool skippable(const std::string& line) {
  auto it = std::find_if(line.begin(), line.end(), [](unsigned char c) { return !std::isspace(c); });
  return it == line.end() || *it == '#';
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
}

double to_double(const std::string& s, std::size_t line_no, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    parse_error(line_no, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

long long to_int(const std::string& s, std::size_t line_no, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_error(line_no, std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

Polarity parse_polarity(std::string_view name) {
  const auto n = lowered(name);
  if (n == "similarity" || n == "sim") return Polarity::Similarity;
  if (n == "distance" || n == "dist") return Polarity::Distance;
  throw Error(ErrorCode::InvalidArgument, "unknown score polarity '" + std::string(name) + "'");
}

RunRanks parse_run(std::istream& in, const std::string& ranker, std::size_t depth, Polarity polarity) {
  struct Row {
    long long rank;
    ItemId doc;
    double score;
  };
  std::map<ItemId, std::vector<Row>> rows;
  std::map<ItemId, std::unordered_set<ItemId>> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = split_ws(line);
    if (f.size() != 6) parse_error(line_no, "expected 6 fields 'qid Q0 docid rank score tag', got " + std::to_string(f.size()));
    const ItemId qid(f[0]);
    const ItemId doc(f[2]);
    const long long rank = to_int(f[3], line_no, "rank");
    if (rank < 1) parse_error(line_no, "rank must be >= 1");
    double score = to_double(f[4], line_no, "score");
    if (polarity == Polarity::Distance) {
      if (score < 0.0) parse_error(line_no, "distance must be non-negative");
      score = 1.0 / (1.0 + score);
    } else if (score < 0.0) {
      parse_error(line_no, "similarity score must be non-negative (declare the ranker as a distance?)");
    }
    if (!seen[qid].insert(doc).second) {
      throw Error(ErrorCode::DuplicateDoc, "line " + std::to_string(line_no) + ": " + doc.str() +
                                               " listed twice for query " + qid.str());
    }
    rows[qid].push_back({rank, doc, score});
  }

  RunRanks out;
  for (auto& [qid, list] : rows) {
    std::stable_sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k].rank != static_cast<long long>(k + 1)) {
        throw Error(ErrorCode::RankGap, "query " + qid.str() + " has no entry at rank " + std::to_string(k + 1));
      }
    }
    std::vector<ScoredEntry> entries;
    for (std::size_t k = 0; k < std::min(depth, list.size()); ++k) entries.push_back({list[k].doc, list[k].score});
    out.emplace(qid, ScoredRank(qid, ranker, std::move(entries), depth));
  }
  return out;
}

RunRanks parse_run_file(const std::filesystem::path& path, const std::string& ranker, std::size_t depth,
                        Polarity polarity) {
  auto in = open_in(path);
  try {
    return parse_run(in, ranker, depth, polarity);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_run(std::ostream& out, const RunRanks& ranks, const std::string& tag) {
  for (const auto& [qid, rank] : ranks) {
    const auto entries = rank.entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
      out << qid.str() << " Q0 " << entries[k].item.str() << ' ' << (k + 1) << ' ' << format_double(entries[k].score)
          << ' ' << tag << '\n';
    }
  }
}

void write_fused_run(std::ostream& out, std::span<const FusedRank> ranks, const std::string& tag, bool distances) {
  for (const auto& rank : ranks) {
    for (std::size_t k = 0; k < rank.entries.size(); ++k) {
      const double score = distances ? 1.0 - rank.entries[k].value : rank.entries[k].value;
      out << rank.query.str() << " Q0 " << rank.entries[k].item.str() << ' ' << (k + 1) << ' ' << format_double(score)
          << ' ' << tag << '\n';
    }
  }
}

std::map<ItemId, std::vector<ItemId>> read_run_items(std::istream& in) {
  std::map<ItemId, std::vector<std::pair<long long, ItemId>>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = split_ws(line);
    if (f.size() != 6) parse_error(line_no, "expected 6 fields 'qid Q0 docid rank score tag'");
    rows[ItemId(f[0])].emplace_back(to_int(f[3], line_no, "rank"), ItemId(f[2]));
  }
  std::map<ItemId, std::vector<ItemId>> out;
  for (auto& [qid, list] : rows) {
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    auto& items = out[qid];
    for (auto& [_, doc] : list) items.push_back(std::move(doc));
  }
  return out;
}

Qrels parse_qrels(std::istream& in) {
  std::map<ItemId, std::map<ItemId, int>> grades;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = split_ws(line);
    if (f.size() != 4) parse_error(line_no, "expected 'qid 0 docid grade'");
    const auto g = to_int(f[3], line_no, "grade");
    if (g < 0) parse_error(line_no, "grade must be non-negative");
    grades[ItemId(f[0])][ItemId(f[2])] = static_cast<int>(g);
  }
  return Qrels::from_grades(std::move(grades));
}

Qrels parse_class_labels(std::istream& in) {
  std::map<ItemId, std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = split_ws(line);
    if (f.size() != 2) parse_error(line_no, "expected 'docid label'");
    if (!labels.emplace(ItemId(f[0]), f[1]).second) parse_error(line_no, "item " + f[0] + " labeled twice");
  }
  return Qrels::from_classes(std::move(labels));
}

std::map<std::string, double> parse_metric_file(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = split_ws(line);
    if (f.size() != 2) parse_error(line_no, "expected 'key value'");
    if (!out.emplace(f[0], to_double(f[1], line_no, "value")).second) parse_error(line_no, "duplicate key " + f[0]);
  }
  return out;
}

EffectivenessTable parse_effectiveness_table(std::istream& in) {
  EffectivenessTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto f = split_ws(line);
    if (f.size() != 4) parse_error(line_no, "expected 'dataset config method value'");
    table.set(f[0], f[1], f[2], to_double(f[3], line_no, "value"));
  }
  return table;
}

CorrelationMatrix parse_correlation_matrix(std::istream& in) {
  CorrelationMatrix m;
  std::vector<std::string> header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto f = split_ws(line);
    if (header.empty()) {
      if (f.size() < 2) parse_error(line_no, "matrix header needs at least one ranker name");
      header.assign(f.begin() + 1, f.end());
      continue;
    }
    if (f.size() != header.size() + 1) parse_error(line_no, "matrix row has the wrong number of columns");
    for (std::size_t k = 0; k < header.size(); ++k) m.set(f[0], header[k], to_double(f[k + 1], line_no, "correlation"));
  }
  if (header.empty()) throw Error(ErrorCode::ParseError, "empty correlation matrix");
  return m;
}

void write_correlation_matrix(std::ostream& out, const std::vector<std::string>& names, const CorrelationMatrix& m) {
  out << "ranker";
  for (const auto& n : names) out << '\t' << n;
  out << '\n';
  for (const auto& row : names) {
    out << row;
    for (const auto& col : names) out << '\t' << format_double(m.at(row, col));
    out << '\n';
  }
}

std::vector<std::string> PipelineConfig::ranker_names() const {
  std::vector<std::string> out;
  out.reserve(rankers.size());
  for (const auto& r : rankers) out.push_back(r.name);
  return out;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  auto in = open_in(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  PipelineConfig cfg;
  try {
    cfg.depth = j.value("depth", std::size_t{10});
    cfg.comparator = parse_comparator(j.value("comparator", std::string("WGU")));
    cfg.selection = parse_strategy(j.value("selection", std::string("all")));
    const auto policy = lowered(j.value("missing_ranks", std::string("lenient")));
    if (policy != "lenient" && policy != "strict") {
      throw Error(ErrorCode::InvalidArgument, "missing_ranks must be 'lenient' or 'strict'");
    }
    cfg.missing_ranks = policy == "strict" ? MissingRankPolicy::Strict : MissingRankPolicy::Lenient;
    cfg.exclude_self = j.value("exclude_self", false);
    for (const auto& r : j.at("rankers")) {
      RankerSpec spec;
      spec.name = r.at("name").get<std::string>();
      spec.run = resolve(r.at("run").get<std::string>());
      spec.polarity = parse_polarity(r.value("polarity", std::string("similarity")));
      cfg.rankers.push_back(std::move(spec));
    }
    if (j.contains("output")) {
      const auto& o = j["output"];
      if (o.contains("index")) cfg.index_dir = resolve(o["index"].get<std::string>());
      if (o.contains("run")) cfg.output_run = resolve(o["run"].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }

  if (cfg.depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  if (cfg.rankers.empty()) throw Error(ErrorCode::InvalidArgument, "configuration lists no rankers");
  std::set<std::string> names;
  for (const auto& r : cfg.rankers) {
    if (r.name.empty() || !names.insert(r.name).second) {
      throw Error(ErrorCode::InvalidArgument, "ranker names must be non-empty and distinct");
    }
  }
  return cfg;
}

CollectionRankIndex load_collection(const PipelineConfig& config, std::size_t threads) {
  std::vector<RunRanks> runs(config.rankers.size());
  parallel_for(runs.size(), threads, [&](std::size_t k) {
    const auto& spec = config.rankers[k];
    runs[k] = parse_run_file(spec.run, spec.name, config.depth, spec.polarity);
  });
  CollectionRankIndex index;
  std::set<ItemId> queries;
  for (auto& run : runs) {
    for (auto& [qid, rank] : run) {
      queries.insert(qid);
      index.insert(std::move(rank));
    }
  }
  index.set_collection_size(queries.size());
  return index;
}

}  // namespace fusegraph
