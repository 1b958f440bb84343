#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "oweb/brauer.hpp"
#include "oweb/combin.hpp"
#include "oweb/evalfun.hpp"
#include "oweb/howe.hpp"
#include "oweb/ssquot.hpp"
#include "oweb/webcat.hpp"

using namespace oweb;
using nlohmann::json;

namespace {

int worker_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("OWEB_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

/// Runs tasks on a small pool; results are emitted in index order so reports
/// are byte-identical for any worker count.
std::vector<std::string> run_ordered(const std::vector<std::function<std::string()>>& tasks,
                                     int workers) {
  std::vector<std::string> out(tasks.size());
  std::atomic<size_t> next{0};
  auto body = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      out[i] = tasks[i]();
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

Params parse_params(const std::string& text) {
  Params out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--params expects k=v pairs");
    out[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
  }
  return out;
}

std::string params_json(const Params& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json matrix_json(const SparseMat& m) {
  json entries = json::array();
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) entries.push_back({r, c, v.str()});
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = entries;
  return j;
}

struct Suite {
  long passed = 0;
  long failed = 0;
  std::vector<std::string> failing;
  int exit() const { return failed == 0 ? 0 : 1; }
  void note(const std::string& row, bool ok) {
    if (ok)
      ++passed;
    else {
      ++failed;
      failing.push_back(row);
    }
    std::cout << row << "\n";
  }
};

void relcheck_family(Suite& suite, const std::vector<std::string>& ids,
                     const std::vector<int>& Ns, const std::vector<FieldSpec>& fields,
                     bool timing, int workers) {
  struct Item {
    std::string id;
    int N;
    FieldSpec spec;
    Params params;
  };
  std::vector<Item> items;
  for (const auto& id : ids)
    for (int N : Ns)
      for (const auto& spec : fields)
        for (const auto& params : relation_instances(id, N))
          items.push_back({id, N, spec, params});
  std::vector<std::function<std::string()>> tasks;
  for (const auto& item : items) {
    tasks.push_back([item, timing] {
      auto t0 = std::chrono::steady_clock::now();
      bool ok = check_relation(item.id, item.params, item.N, item.spec);
      std::ostringstream os;
      os << "{\"relation\":\"" << item.id << "\",\"params\":" << params_json(item.params)
         << ",\"N\":" << item.N << ",\"field\":\"" << item.spec.name()
         << "\",\"pass\":" << (ok ? "true" : "false");
      if (timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        os << ",\"elapsed_ms\":" << ms;
      }
      os << "}";
      return os.str();
    });
  }
  for (const auto& row : run_ordered(tasks, workers))
    suite.note(row, row.find("\"pass\":false") == std::string::npos);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal web calculus engine"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a diagram or morphism JSON file");
  std::string eval_file, eval_field = "q";
  int eval_N = 3;
  eval_cmd->add_option("--diagram", eval_file, "JSON file")->required();
  eval_cmd->add_option("--N", eval_N, "maximal thickness");
  eval_cmd->add_option("--field", eval_field, "q, q(i), p, or p(i)");
  eval_cmd->callback([&] {
    FieldSpec spec = FieldSpec::parse(eval_field);
    WebMorphism m = morphism_from_json(read_file(eval_file), spec);
    SparseMat mat = evaluate(m, eval_N, spec);
    if (mat.rows() == 1 && mat.cols() == 1)
      std::cout << mat.get(0, 0).str() << "\n";
    else
      std::cout << matrix_json(mat).dump() << "\n";
  });

  // ---- render ----
  auto* render_cmd = app.add_subcommand("render", "render a diagram to SVG");
  std::string render_file, render_out;
  render_cmd->add_option("--diagram", render_file, "JSON file")->required();
  render_cmd->add_option("--out", render_out, "output .svg path")->required();
  render_cmd->callback([&] {
    WebDiagram d = diagram_from_json(read_file(render_file));
    std::ofstream out(render_out);
    out << render_svg(d);
  });

  // ---- relcheck ----
  auto* rel_cmd = app.add_subcommand("relcheck", "verify defining and derived relations");
  std::string rel_id, rel_field = "q", rel_params_text;
  int rel_N = 3, rel_workers = 0;
  bool rel_all = false, rel_timing = false;
  std::string rel_suite;
  rel_cmd->add_option("--relation", rel_id, "relation id (see --list)");
  rel_cmd->add_option("--N", rel_N, "maximal thickness");
  rel_cmd->add_option("--field", rel_field, "q, q(i), p, or p(i)");
  rel_cmd->add_flag("--all-labels", rel_all, "run every instance with labels <= N");
  rel_cmd->add_option("--params", rel_params_text, "single instance, e.g. k=1,l=2");
  rel_cmd->add_option("--suite", rel_suite, "'full' runs the complete battery");
  rel_cmd->add_flag("--timing", rel_timing, "include elapsed_ms in records");
  rel_cmd->add_option("--workers", rel_workers, "worker threads (or env OWEB_WORKERS)");
  bool rel_list = false;
  rel_cmd->add_flag("--list", rel_list, "list relation ids");
  rel_cmd->callback([&] {
    if (rel_list) {
      for (const auto& id : relation_ids()) std::cout << id << "\n";
      return;
    }
    Suite suite;
    int workers = worker_count(rel_workers);
    if (rel_suite == "full") {
      std::vector<FieldSpec> fields{FieldSpec::rationals(), FieldSpec::prime(3),
                                    FieldSpec::prime(5)};
      relcheck_family(suite, relation_ids(), {2, 3, 4}, fields, rel_timing, workers);
      for (int m = 2; m <= 3; ++m)
        for (int N = 2; N <= 3; ++N)
          for (const auto& spec : fields) {
            UdotReport rep = check_udot_relations(m, N, 2, spec);
            std::ostringstream os;
            os << "{\"relation\":\"Udot\",\"params\":{\"m\":" << m << ",\"a_max\":2}"
               << ",\"N\":" << N << ",\"field\":\"" << spec.name()
               << "\",\"pass\":" << (rep.ok() ? "true" : "false") << "}";
            suite.note(os.str(), rep.ok());
          }
      std::cerr << "relcheck summary: " << suite.passed << " passed, " << suite.failed
                << " failed\n";
      rc = suite.exit();
      return;
    }
    if (rel_id.empty()) throw CLI::ValidationError("--relation or --suite full required");
    FieldSpec spec = FieldSpec::parse(rel_field);
    if (!rel_params_text.empty()) {
      Params p = parse_params(rel_params_text);
      bool ok = check_relation(rel_id, p, rel_N, spec);
      std::ostringstream os;
      os << "{\"relation\":\"" << rel_id << "\",\"params\":" << params_json(p)
         << ",\"N\":" << rel_N << ",\"field\":\"" << spec.name()
         << "\",\"pass\":" << (ok ? "true" : "false") << "}";
      suite.note(os.str(), ok);
    } else {
      relcheck_family(suite, {rel_id}, {rel_N}, {spec}, rel_timing, workers);
    }
    std::cerr << "relcheck summary: " << suite.passed << " passed, " << suite.failed
              << " failed\n";
    rc = suite.exit();
  });

  // ---- howe ----
  auto* howe_cmd = app.add_subcommand("howe", "Howe action checks");
  howe_cmd->require_subcommand(1);
  int howe_N = 2, howe_m = 2;
  std::string howe_field = "q";
  auto* agree_cmd = howe_cmd->add_subcommand("agree", "dot action vs ladder action");
  agree_cmd->add_option("--N", howe_N)->required();
  agree_cmd->add_option("--m", howe_m)->required();
  agree_cmd->add_option("--field", howe_field);
  agree_cmd->callback([&] {
    bool ok = actions_agree(howe_N, howe_m, FieldSpec::parse(howe_field));
    std::cout << "{\"check\":\"agree\",\"N\":" << howe_N << ",\"m\":" << howe_m
              << ",\"pass\":" << (ok ? "true" : "false") << "}\n";
    rc = ok ? 0 : 1;
  });
  auto* commute_cmd = howe_cmd->add_subcommand("commute", "ladders vs so_N and sigma");
  commute_cmd->add_option("--N", howe_N)->required();
  commute_cmd->add_option("--m", howe_m)->required();
  commute_cmd->add_option("--field", howe_field);
  commute_cmd->callback([&] {
    bool ok = commutant_check(howe_N, howe_m, FieldSpec::parse(howe_field));
    std::cout << "{\"check\":\"commute\",\"N\":" << howe_N << ",\"m\":" << howe_m
              << ",\"pass\":" << (ok ? "true" : "false") << "}\n";
    rc = ok ? 0 : 1;
  });
  auto* enddim_cmd = howe_cmd->add_subcommand("enddim", "fmf rank vs Weyl dimension sum");
  enddim_cmd->add_option("--N", howe_N)->required();
  enddim_cmd->add_option("--m", howe_m)->required();
  enddim_cmd->add_option("--field", howe_field);
  enddim_cmd->callback([&] {
    FieldSpec spec = FieldSpec::parse(howe_field);
    mpz_class want = end_dim_prediction(howe_N, howe_m);
    long got = fmf_end_rank(howe_N, howe_m, spec);
    bool ok = mpz_class(got) == want;
    std::cout << "{\"check\":\"enddim\",\"N\":" << howe_N << ",\"m\":" << howe_m
              << ",\"field\":\"" << spec.name() << "\",\"prediction\":" << want.get_str()
              << ",\"rank\":" << got << ",\"pass\":" << (ok ? "true" : "false") << "}\n";
    rc = ok ? 0 : 1;
  });

  // ---- brauer ----
  auto* brauer_cmd = app.add_subcommand("brauer", "colored Brauer category");
  brauer_cmd->require_subcommand(1);
  auto* gram_cmd = brauer_cmd->add_subcommand("gram", "Gram matrix of a color word");
  std::string br_word, br_word2, br_params, br_field = "q";
  gram_cmd->add_option("--word", br_word, "bottom color word, e.g. 0,1,0")->required();
  gram_cmd->add_option("--word2", br_word2, "top color word (defaults to --word)");
  gram_cmd->add_option("--params", br_params, "loop parameters d_0,d_1,...")->required();
  gram_cmd->add_option("--field", br_field);
  gram_cmd->callback([&] {
    FieldSpec spec = FieldSpec::parse(br_field);
    auto K = parse_int_list(br_word);
    auto L = br_word2.empty() ? K : parse_int_list(br_word2);
    LoopParams params;
    for (const auto& txt : [&] {
           std::vector<std::string> out;
           std::stringstream ss(br_params);
           std::string item;
           while (std::getline(ss, item, ',')) out.push_back(item);
           return out;
         }())
      params.d.push_back(parse_scalar(spec, txt));
    auto G = brauer_gram(K, L, params);
    json rows = json::array();
    for (const auto& row : G) {
      json r = json::array();
      for (const auto& v : row) r.push_back(v.str());
      rows.push_back(r);
    }
    json j;
    j["gram"] = rows;
    j["rank"] = rank_of_rows(G, spec);
    std::cout << j.dump() << "\n";
  });

  // ---- ss ----
  auto* ss_cmd = app.add_subcommand("ss", "semisimplification data");
  ss_cmd->require_subcommand(1);
  auto* dim_cmd = ss_cmd->add_subcommand("dim", "semisimplified Hom dimension");
  std::string ss_src, ss_tgt;
  int ss_N = 4;
  long ss_p = 3;
  dim_cmd->add_option("--source", ss_src, "labels, e.g. 1,1")->required();
  dim_cmd->add_option("--target", ss_tgt, "labels")->required();
  dim_cmd->add_option("--N", ss_N)->required();
  dim_cmd->add_option("--p", ss_p, "odd prime, or 0 for Q")->required();
  dim_cmd->callback([&] {
    FieldSpec spec = ss_p == 0 ? FieldSpec::rationals() : FieldSpec::prime(ss_p);
    Word K = parse_int_list(ss_src), L = parse_int_list(ss_tgt);
    HomSpace hs = hom_space(K, L, ss_N, spec);
    int ssdim = ss_hom_dim(K, L, ss_N, spec);
    json j;
    j["hom_rank"] = hs.rank();
    j["ss_dim"] = ssdim;
    auto G = gram_matrix(K, L, ss_N, spec);
    json rows = json::array();
    for (const auto& row : G) {
      json r = json::array();
      for (const auto& v : row) r.push_back(v.str());
      rows.push_back(r);
    }
    j["gram"] = rows;
    std::cout << j.dump() << "\n";
  });
  auto* neg_cmd = ss_cmd->add_subcommand("negligible-merge", "merge/split negligibility");
  int neg_a = 1, neg_b = 2, neg_N = 4;
  long neg_p = 3;
  neg_cmd->add_option("--a", neg_a)->required();
  neg_cmd->add_option("--b", neg_b)->required();
  neg_cmd->add_option("--p", neg_p)->required();
  neg_cmd->add_option("--N", neg_N)->required();
  neg_cmd->callback([&] {
    long t = neg_a + neg_b;
    int i = 0;
    for (long q = 1; q < t; q *= neg_p) ++i;
    bool ok = merge_split_negligibility(neg_a, neg_b, i, neg_p, neg_N);
    std::cout << "{\"check\":\"negligible-merge\",\"a\":" << neg_a << ",\"b\":" << neg_b
              << ",\"p\":" << neg_p << ",\"N\":" << neg_N
              << ",\"pass\":" << (ok ? "true" : "false") << "}\n";
    rc = ok ? 0 : 1;
  });
  auto* cross_cmd = ss_cmd->add_subcommand("crosscheck", "web vs colored Brauer ss ranks");
  std::string cc_word, cc_word2;
  int cc_N = 4;
  long cc_p = 3;
  cross_cmd->add_option("--word", cc_word, "digit positions, e.g. 0,0")->required();
  cross_cmd->add_option("--word2", cc_word2, "second word (defaults to --word)");
  cross_cmd->add_option("--p", cc_p)->required();
  cross_cmd->add_option("--N", cc_N)->required();
  cross_cmd->callback([&] {
    auto w1 = parse_int_list(cc_word);
    auto w2 = cc_word2.empty() ? w1 : parse_int_list(cc_word2);
    bool ok = verlinde_crosscheck(w1, w2, cc_p, cc_N);
    std::cout << "{\"check\":\"crosscheck\",\"p\":" << cc_p << ",\"N\":" << cc_N
              << ",\"pass\":" << (ok ? "true" : "false") << "}\n";
    rc = ok ? 0 : 1;
  });

  // ---- weights ----
  auto* weights_cmd = app.add_subcommand("weights", "weight combinatorics");
  weights_cmd->require_subcommand(1);
  auto* dagger_cmd = weights_cmd->add_subcommand("dagger", "the order-reversing bijection");
  int wg_N = 2, wg_m = 2;
  bool wg_all = false;
  dagger_cmd->add_option("--N", wg_N)->required();
  dagger_cmd->add_option("--m", wg_m)->required();
  dagger_cmd->add_flag("--all", wg_all, "print the full table");
  dagger_cmd->callback([&] {
    for (const auto& lam : o_weights_in_box(wg_N, wg_m)) {
      Composition K = dagger(lam, wg_m);
      json j;
      j["lambda"] = {{"partition", lam.partition}, {"epsilon", lam.epsilon}};
      j["dagger"] = K;
      std::cout << j.dump() << "\n";
      if (!wg_all) break;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
