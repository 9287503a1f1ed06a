// lorder: decide left-orderability questions for finitely presented
// groups and run the no-faithful-circle-action obstruction pipeline.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <lorder/abelian.hpp>
#include <lorder/enumerate.hpp>
#include <lorder/obstruct.hpp>
#include <lorder/order.hpp>
#include <lorder/rewrite.hpp>
#include <lorder/subgrp.hpp>
#include <lorder/words.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace lorder;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNotConfluent = 3;
constexpr int kExitResource = 4;
constexpr int kExitBadCertificate = 5;

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitParse, "cannot open " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const fs::path& path) {
  try {
    return Presentation::parse(read_file(path));
  } catch (const ParseError& e) {
    throw CliError{kExitParse, path.string() + ":" + std::to_string(e.line) + ":" +
                                   std::to_string(e.column) + ": " + e.what()};
  }
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::vector<std::string> out;
  std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

struct CommonOpts {
  bool json = false;
  std::size_t max_rules = 20000;
  std::size_t max_lhs_length = 60;
  std::size_t confluence_target = 0;

  KbOptions kb() const {
    KbOptions o;
    o.max_rules = max_rules;
    o.max_lhs_length = max_lhs_length;
    o.target_confluence = confluence_target;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_flag("--json", c.json, "emit JSON instead of text");
  cmd->add_option("--max-rules", c.max_rules, "rewriting rule budget")->check(CLI::PositiveNumber);
  cmd->add_option("--max-lhs", c.max_lhs_length, "rewriting rule length budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--confluence-target", c.confluence_target,
                  "stop completion once confluence is certified on words up to this length "
                  "(0 = pursue full confluence)");
}

// Complete with enough certification for reductions of words up to
// length `needed` (0 = insist on full confluence).
RewritingSystem complete_or_throw(const Presentation& p, KbOptions kb, std::size_t needed = 0) {
  if (needed > 0 && kb.target_confluence == 0) kb.target_confluence = needed;
  RewritingSystem sys = knuth_bendix(p, kb);
  bool ok = needed > 0 ? sys.confluent_up_to(needed) : sys.confluent();
  if (!ok) {
    throw CliError{kExitNotConfluent,
                   "rewriting system did not become confluent within budget (" +
                       std::to_string(sys.rules().size()) + " rules)"};
  }
  return sys;
}

std::string reason_string(InconclusiveReason r) {
  switch (r) {
    case InconclusiveReason::DepthCap:
      return "depth-cap";
    case InconclusiveReason::StabilityCheckFailed:
      return "stability-check-failed";
    default:
      return "budget-exceeded";
  }
}

json verdict_json(const Presentation& p, const OrderVerdict& v) {
  json j;
  j["verdict"] = v.kind_string();
  j["radius"] = v.radius;
  j["word_problem"] = v.confluence_bound == 0
                          ? std::string("confluent")
                          : "confluent-up-to-" + std::to_string(v.confluence_bound);
  if (v.kind == VerdictKind::ConsistentAtRadius) {
    json w = json::array();
    for (const auto& g : v.witness) w.push_back(p.render_word(g));
    j["witness"] = w;
  }
  if (v.kind == VerdictKind::Inconclusive) {
    j["reason"] = reason_string(v.reason);
  }
  if (v.certificate) j["certificate_leaves"] = v.certificate->leaf_count();
  return j;
}

fs::path cert_path_for(const fs::path& input) {
  fs::path out = input;
  out.replace_extension();
  out += ".cert.json";
  return out;
}

std::vector<int> parse_radius_list(const std::string& s) {
  std::vector<int> radii;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      radii.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw CliError{kExitParse, "--radius: '" + tok + "' is not an integer"};
    }
  }
  if (radii.empty() || !std::is_sorted(radii.begin(), radii.end()) ||
      std::adjacent_find(radii.begin(), radii.end()) != radii.end() || radii.front() < 1) {
    throw CliError{kExitParse, "--radius: expected a strictly increasing list of radii >= 1"};
  }
  return radii;
}

// ---------------------------------------------------------------------------

int cmd_check(const fs::path& file, const std::string& radius_list, int depth_cap, bool screen,
              bool no_seed, bool strict, const CommonOpts& c, long timeout_s) {
  Presentation p = load_presentation(file);
  CheckOptions opts;
  opts.radii = parse_radius_list(radius_list);
  opts.depth_cap = screen ? 5 : depth_cap;
  opts.seed_first_generator = !no_seed;
  opts.require_confluent = strict;
  opts.kb = c.kb();
  if (timeout_s > 0) {
    opts.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(timeout_s);
  }
  OrderVerdict v = test_left_orderability(p, opts);

  std::string cert_file;
  if (v.kind == VerdictKind::NotLeftOrderable) {
    fs::path out = cert_path_for(file);
    std::ofstream o(out);
    o << v.certificate->to_json(p).dump(2) << "\n";
    cert_file = out.string();
  }
  if (c.json) {
    json j = verdict_json(p, v);
    j["presentation"] = p.render();
    j["screen"] = screen;
    if (!cert_file.empty()) j["certificate"] = cert_file;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << v.kind_string();
    if (v.kind == VerdictKind::NotLeftOrderable) {
      std::cout << " at radius " << v.radius << "\ncertificate: " << cert_file;
    } else if (v.kind == VerdictKind::ConsistentAtRadius) {
      std::cout << " at radius " << v.radius << " (" << v.witness.size() << " cone elements)";
    } else {
      std::cout << " (" << reason_string(v.reason) << ")";
    }
    if (v.confluence_bound != 0) {
      std::cout << "\nword problem: confluent up to length " << v.confluence_bound;
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_kb(const fs::path& file, bool show_rules, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  RewritingSystem sys = knuth_bendix(p, c.kb());
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["status"] = sys.confluent() ? "confluent" : "budget-exceeded";
    if (!sys.confluent() && sys.confluence_bound() > 0) {
      j["confluent_up_to"] = sys.confluence_bound();
    }
    j["rules"] = sys.rules().size();
    j["max_rule_length"] = sys.max_rule_length();
    if (show_rules) {
      json rules = json::array();
      for (const auto& r : sys.rules()) {
        rules.push_back({{"lhs", p.render_word(r.lhs)}, {"rhs", p.render_word(r.rhs)}});
      }
      j["rule_list"] = std::move(rules);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (sys.confluent() ? "confluent" : "budget-exceeded");
    if (!sys.confluent() && sys.confluence_bound() > 0) {
      std::cout << " (confluent up to length " << sys.confluence_bound() << ")";
    }
    std::cout << ", " << sys.rules().size() << " rules, longest lhs " << sys.max_rule_length()
              << "\n";
    if (show_rules) {
      for (const auto& r : sys.rules()) {
        std::cout << p.render_word(r.lhs) << " -> " << p.render_word(r.rhs) << "\n";
      }
    }
  }
  return sys.confluent() ? kExitOk : kExitNotConfluent;
}

int cmd_ball(const fs::path& file, int radius, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  RewritingSystem sys = complete_or_throw(p, c.kb(), 2 * static_cast<std::size_t>(radius));
  Ball ball = build_ball(sys, radius);
  auto sizes = ball.sizes();
  GrowthFit fit{};
  bool have_fit = radius >= 3;
  if (have_fit) fit = fit_growth(sizes, std::min(2, radius - 1), radius);
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["radius"] = radius;
    j["sizes"] = sizes;
    j["full_table"] = ball.has_full_table();
    if (have_fit) {
      j["growth"] = {{"coefficient", fit.coefficient},
                     {"base", fit.growth},
                     {"residual", fit.residual}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "#B(0.." << radius << "):";
    for (auto s : sizes) std::cout << " " << s;
    std::cout << "\n";
    if (have_fit) {
      std::printf("growth fit: #B(r) ~ %.3f * %.3f^r (rms residual %.3g)\n", fit.coefficient,
                  fit.growth, fit.residual);
    }
  }
  return kExitOk;
}

int cmd_homology(const fs::path& file, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  AbelianInvariants h = h1(p);
  auto snf = smith_normal_form(abelianization_matrix(p));
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["h1"] = h.to_string();
    j["free_rank"] = h.free_rank;
    json tors = json::array();
    for (const auto& t : h.torsion) tors.push_back(t.str());
    j["torsion"] = std::move(tors);
    j["exponent"] = h.exponent().str();
    json diag = json::array();
    for (const auto& d : snf.diagonal) diag.push_back(d.str());
    j["snf_diagonal"] = std::move(diag);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "H1 = " << h.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_kernels(const fs::path& file, long n, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  auto epis = epimorphisms_to_cyclic(p, n);
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["modulus"] = n;
    json list = json::array();
    for (const auto& e : epis) list.push_back(e.images);
    j["epimorphisms"] = std::move(list);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << epis.size() << " surjections onto Z/" << n << " (up to kernel)\n";
    for (const auto& e : epis) {
      for (std::size_t g = 0; g < e.images.size(); ++g) {
        std::cout << (g ? ", " : "  ") << p.alphabet[g] << " -> " << e.images[g];
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_low_index(const fs::path& file, int max_index, bool presentations, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  auto tables = low_index_subgroups(p, max_index);
  json list = json::array();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    json row;
    row["id"] = i;
    row["index"] = t.index();
    row["normal"] = t.is_normal();
    if (presentations) {
      auto sp = tietze_simplify(subgroup_presentation(p, t));
      row["presentation"] = sp.presentation.render();
    }
    list.push_back(std::move(row));
  }
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["max_index"] = max_index;
    j["classes"] = std::move(list);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << tables.size() << " conjugacy classes of subgroups of index <= " << max_index
              << "\n";
    for (const auto& row : list) {
      std::cout << "  index " << row["index"].get<int>()
                << (row["normal"].get<bool>() ? " (normal)" : "");
      if (presentations) std::cout << "  " << row["presentation"].get<std::string>();
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_obstruction(const fs::path& file, const std::string& radius_list, int depth_cap,
                    const CommonOpts& c, long timeout_s) {
  Presentation p = load_presentation(file);
  CheckOptions opts;
  opts.radii = parse_radius_list(radius_list);
  opts.depth_cap = depth_cap;
  opts.kb = c.kb();
  if (timeout_s > 0) {
    opts.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(timeout_s);
  }
  ObstructionReport rep = circle_obstruction(p, opts);
  std::string conclusion = rep.conclusion() == ObstructionConclusion::NoFaithfulCircleAction
                               ? "NoFaithfulCircleAction"
                           : rep.conclusion() == ObstructionConclusion::NotApplicable
                               ? "NotApplicable"
                               : "Inconclusive";
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["h1"] = rep.h1.to_string();
    j["z2_cohomology_trivial"] = rep.z2_cohomology_trivial;
    j["n_candidates"] = rep.n_candidates;
    if (rep.ambient_verdict) j["ambient"] = verdict_json(p, *rep.ambient_verdict);
    json subs = json::array();
    for (const auto& s : rep.subgroups) {
      json row;
      row["candidate_order"] = s.candidate_order;
      row["index"] = s.index;
      row["normal"] = s.normal;
      row["presentation"] = s.presentation_text;
      row["verdict"] = s.verdict.kind_string();
      row["radius"] = s.verdict.radius;
      subs.push_back(std::move(row));
    }
    j["subgroups"] = std::move(subs);
    j["conclusion"] = conclusion;
    j["detail"] = rep.detail();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "H1 = " << rep.h1.to_string() << "\n";
    if (rep.ambient_verdict) {
      std::cout << "ambient group: " << rep.ambient_verdict->kind_string() << "\n";
    }
    for (const auto& s : rep.subgroups) {
      std::cout << "index-" << s.index << " subgroup #" << s.table_id
                << (s.normal ? " (normal)" : "") << ": " << s.verdict.kind_string() << "\n";
    }
    std::cout << conclusion << (rep.detail().empty() ? "" : ": " + rep.detail()) << "\n";
  }
  return kExitOk;
}

int cmd_verify_cert(const fs::path& file, const fs::path& cert_file, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  json parsed;
  Certificate cert;
  try {
    parsed = json::parse(read_file(cert_file));
    cert = Certificate::from_json(parsed, p);
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError{kExitBadCertificate, std::string("malformed certificate: ") + e.what()};
  }
  CertCheckResult res = check_certificate(cert, p, c.kb());
  if (c.json) {
    json j;
    j["certificate"] = cert_file.string();
    j["valid"] = res.valid;
    if (!res.valid) j["failure"] = res.failure;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (res.valid ? "VALID" : "INVALID: " + res.failure) << "\n";
  }
  return res.valid ? kExitOk : kExitBadCertificate;
}

int cmd_identities(const fs::path& file, const fs::path& words_file, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  std::vector<std::pair<Word, std::vector<ConjugateFactor>>> corpus;
  for (const auto& line : read_lines(words_file)) {
    try {
      corpus.emplace_back(p.parse_word(line), std::vector<ConjugateFactor>{});
    } catch (const ParseError& e) {
      throw CliError{kExitParse, words_file.string() + ": '" + line + "': " + e.what()};
    }
  }
  auto checks = verify_identity_corpus(p, corpus, c.kb());
  bool all_ok = true;
  json rows = json::array();
  for (const auto& chk : checks) {
    all_ok = all_ok && chk.reduces_to_identity;
    rows.push_back({{"word", p.render_word(chk.word)},
                    {"trivial", chk.reduces_to_identity},
                    {"normal_form", p.render_word(chk.normal_form)}});
  }
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["all_trivial"] = all_ok;
    j["words"] = std::move(rows);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      std::cout << row["word"].get<std::string>() << ": "
                << (row["trivial"].get<bool>() ? "= 1" : "!= 1, normal form " +
                                                             row["normal_form"].get<std::string>())
                << "\n";
    }
    std::cout << (all_ok ? "all trivial" : "NOT all trivial") << "\n";
  }
  return kExitOk;
}

int cmd_quotients(const fs::path& file, const fs::path& words_file, long n, const CommonOpts& c) {
  Presentation p = load_presentation(file);
  std::vector<Word> words;
  for (const auto& line : read_lines(words_file)) {
    try {
      words.push_back(p.parse_word(line));
    } catch (const ParseError& e) {
      throw CliError{kExitParse, words_file.string() + ": '" + line + "': " + e.what()};
    }
  }
  auto checks = check_quotients_cyclic(p, words, n);
  bool all_ok = true;
  json rows = json::array();
  for (const auto& chk : checks) {
    all_ok = all_ok && chk.ok;
    json row;
    row["word"] = p.render_word(chk.word);
    if (chk.overflow) {
      row["order"] = nullptr;
    } else {
      row["order"] = chk.order;
      row["cyclic"] = chk.cyclic;
    }
    row["ok"] = chk.ok;
    rows.push_back(std::move(row));
  }
  if (c.json) {
    json j;
    j["presentation"] = p.render();
    j["modulus"] = n;
    j["all_ok"] = all_ok;
    j["quotients"] = std::move(rows);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& chk : checks) {
      std::cout << p.render_word(chk.word) << ": ";
      if (chk.overflow) {
        std::cout << "overflow";
      } else {
        std::cout << "order " << chk.order << (chk.cyclic ? ", cyclic" : ", not cyclic");
      }
      std::cout << (chk.ok ? "" : "  [FAIL]") << "\n";
    }
    std::cout << (all_ok ? "all quotients have order " + std::to_string(n) + " and are cyclic"
                         : "NOT all quotients check out")
              << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// batch

struct BatchRow {
  std::string name;
  std::string h1;
  std::string ord;  // "N", "O", or ""
  std::string error;
  int radius = 0;
  double seconds = 0;
};

json row_to_json(const BatchRow& r) {
  json j;
  j["name"] = r.name;
  j["h1"] = r.h1;
  j["ord"] = r.ord;
  j["radius"] = r.radius;
  j["seconds"] = r.seconds;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

int cmd_batch(const fs::path& dir, const std::string& radius_list, int depth_cap, bool screen,
              long timeout_s, unsigned jobs, bool deterministic, const fs::path& cache_file,
              const CommonOpts& c) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".grp") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  json cache = json::object();
  if (!cache_file.empty() && fs::exists(cache_file)) {
    try {
      cache = json::parse(read_file(cache_file));
    } catch (const std::exception&) {
      cache = json::object();
    }
  }
  std::string config_key = radius_list + "/" + std::to_string(depth_cap) + "/" +
                           (screen ? "s" : "d") + "/" + std::to_string(c.max_rules) + "/" +
                           std::to_string(c.max_lhs_length);

  std::vector<BatchRow> rows(files.size());
  std::mutex cache_mu;
  std::atomic<std::size_t> next{0};
  if (deterministic) jobs = 1;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      BatchRow& row = rows[i];
      row.name = files[i].stem().string();
      auto t0 = std::chrono::steady_clock::now();
      try {
        Presentation p = Presentation::parse(read_file(files[i]));
        std::string key = p.hash_hex() + "/" + config_key;
        {
          std::lock_guard<std::mutex> lk(cache_mu);
          if (cache.contains(key)) {
            const json& hit = cache[key];
            row.h1 = hit.value("h1", "");
            row.ord = hit.value("ord", "");
            row.radius = hit.value("radius", 0);
            row.seconds = 0;
            continue;
          }
        }
        row.h1 = h1(p).to_string();
        CheckOptions opts;
        opts.radii = parse_radius_list(radius_list);
        opts.depth_cap = screen ? 5 : depth_cap;
        opts.kb = c.kb();
        if (timeout_s > 0) {
          opts.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(timeout_s);
        }
        try {
          OrderVerdict v = test_left_orderability(p, opts);
          if (v.kind == VerdictKind::NotLeftOrderable) {
            row.ord = "N";
          } else if (v.kind == VerdictKind::ConsistentAtRadius) {
            row.ord = "O";
          }
          row.radius = v.radius;
        } catch (const NotConfluentError&) {
          row.ord = "";  // blank: cannot analyze
        } catch (const ResourceExceeded&) {
          row.ord = "";
        }
        {
          std::lock_guard<std::mutex> lk(cache_mu);
          cache[key] = {{"h1", row.h1}, {"ord", row.ord}, {"radius", row.radius}};
        }
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!cache_file.empty()) {
    std::ofstream out(cache_file);
    out << cache.dump(2) << "\n";
  }

  if (c.json) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_to_json(r));
    std::cout << arr.dump(2) << "\n";
  } else {
    std::printf("%-16s %-18s %-4s %-7s %s\n", "Name", "Hom", "Ord", "Radius", "Time");
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        std::printf("%-16s error: %s\n", r.name.c_str(), r.error.c_str());
      } else {
        std::printf("%-16s %-18s %-4s %-7d %.1fs\n", r.name.c_str(), r.h1.c_str(), r.ord.c_str(),
                    r.radius, r.seconds);
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"left-orderability and circle-action obstructions for finitely presented groups"};
  app.require_subcommand(1);

  std::string file, words_file, cert_file, dir;
  std::string radius_list = "3,4,5,6";
  int depth_cap = 16;
  int radius = 5;
  int max_index = 5;
  long modulus = 5;
  long timeout_s = 0;
  unsigned jobs = 0;
  bool screen = false, no_seed = false, show_rules = false, presentations = false;
  bool strict = false;
  bool deterministic = false;
  std::string cache_file;
  CommonOpts common;

  auto* check = app.add_subcommand("check", "decide left-orderability one-sidedly");
  check->add_option("file", file, "presentation file")->required();
  check->add_option("--radius", radius_list, "comma-separated increasing radius schedule");
  check->add_option("--depth-cap", depth_cap, "branching depth cap");
  check->add_flag("--screen", screen, "screening mode (depth cap 5)");
  check->add_flag("--no-seed", no_seed, "do not seed the first generator as positive");
  check->add_flag("--strict", strict,
                  "require a fully confluent rewriting system (no bounded-confluence fallback)");
  check->add_option("--timeout", timeout_s, "wall-clock budget in seconds");
  add_common(check, common);

  auto* kb = app.add_subcommand("kb", "run rewriting-system completion");
  kb->add_option("file", file)->required();
  kb->add_flag("--rules", show_rules, "print the rule set");
  add_common(kb, common);

  auto* ball = app.add_subcommand("ball", "enumerate the ball B(r)");
  ball->add_option("file", file)->required();
  ball->add_option("--radius", radius, "ball radius");
  add_common(ball, common);

  auto* hom = app.add_subcommand("homology", "first integral homology");
  hom->add_option("file", file)->required();
  add_common(hom, common);

  auto* ker = app.add_subcommand("kernels", "surjections onto Z/n up to kernel");
  ker->add_option("file", file)->required();
  ker->add_option("-n,--modulus", modulus, "cyclic order n");
  add_common(ker, common);

  auto* low = app.add_subcommand("low-index", "conjugacy classes of low-index subgroups");
  low->add_option("file", file)->required();
  low->add_option("--max-index", max_index, "maximum index");
  low->add_flag("--presentations", presentations, "derive subgroup presentations");
  add_common(low, common);

  auto* obs = app.add_subcommand("circle-obstruction", "no-faithful-circle-action pipeline");
  obs->add_option("file", file)->required();
  obs->add_option("--radius", radius_list, "radius schedule for orderability tests");
  obs->add_option("--depth-cap", depth_cap, "branching depth cap");
  obs->add_option("--timeout", timeout_s, "wall-clock budget in seconds");
  add_common(obs, common);

  auto* ver = app.add_subcommand("verify-cert", "independently validate a certificate");
  ver->add_option("file", file, "presentation file")->required();
  ver->add_option("certificate", cert_file, "certificate JSON")->required();
  add_common(ver, common);

  auto* ident = app.add_subcommand("identities", "check that words are trivial in the group");
  ident->add_option("file", file)->required();
  ident->add_option("words", words_file, "file with one word per line")->required();
  add_common(ident, common);

  auto* quot = app.add_subcommand("quotients", "orders of quotients by normal closures");
  quot->add_option("file", file)->required();
  quot->add_option("words", words_file, "file with one word per line")->required();
  quot->add_option("-n,--modulus", modulus, "expected cyclic order");
  add_common(quot, common);

  auto* batch = app.add_subcommand("batch", "run the search over a directory of .grp files");
  batch->add_option("dir", dir, "directory of presentation files")->required();
  batch->add_option("--radius", radius_list, "radius schedule");
  batch->add_option("--depth-cap", depth_cap, "branching depth cap");
  batch->add_flag("--screen", screen, "screening mode");
  batch->add_option("--timeout", timeout_s, "per-file wall-clock budget in seconds")
      ->default_val(300);
  batch->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  batch->add_flag("--deterministic", deterministic, "single-threaded, reproducible order");
  batch->add_option("--cache", cache_file, "results cache file (JSON)");
  add_common(batch, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      return cmd_check(file, radius_list, depth_cap, screen, no_seed, strict, common, timeout_s);
    }
    if (kb->parsed()) return cmd_kb(file, show_rules, common);
    if (ball->parsed()) return cmd_ball(file, radius, common);
    if (hom->parsed()) return cmd_homology(file, common);
    if (ker->parsed()) return cmd_kernels(file, modulus, common);
    if (low->parsed()) return cmd_low_index(file, max_index, presentations, common);
    if (obs->parsed()) return cmd_obstruction(file, radius_list, depth_cap, common, timeout_s);
    if (ver->parsed()) return cmd_verify_cert(file, cert_file, common);
    if (ident->parsed()) return cmd_identities(file, words_file, common);
    if (quot->parsed()) return cmd_quotients(file, words_file, modulus, common);
    if (batch->parsed()) {
      return cmd_batch(dir, radius_list, depth_cap, screen, timeout_s, jobs, deterministic,
                       cache_file, common);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const NotConfluentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotConfluent;
  } catch (const ResourceExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
