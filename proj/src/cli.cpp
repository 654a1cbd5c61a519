#include "afr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "afr/error.hpp"
#include "afr/verify.hpp"
#include "afr/version.hpp"

namespace afr {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

ContextSpec spec_of(const std::string& token) { return parse_context_spec(token); }

AlgebraId spec_id(const ContextSpec& s) { return AlgebraId{family_from_letter(s.family), s.rank}; }

Weight parse_weight(const std::string& text, int rank) {
  std::string cleaned = text;
  for (auto& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream is(cleaned);
  Weight w;
  long long v;
  while (is >> v) w.push_back(static_cast<std::int32_t>(v));
  if (static_cast<int>(w.size()) != rank)
    throw UsageError("weight '" + text + "' must have " + std::to_string(rank) + " labels");
  for (auto x : w)
    if (x < 0) throw UsageError("weight labels must be nonnegative");
  return w;
}

std::string fmt15(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

json context_json(const LevelContext& ctx) {
  return json{{"family", std::string(1, family_letter(ctx.alg->id.family))},
              {"rank", ctx.alg->rank},
              {"level", ctx.level},
              {"kappa", ctx.kappa},
              {"conductor", ctx.alg->conductor},
              {"size", ctx.size()}};
}

struct CliState {
  std::string cache_dir;
  std::string format = "json";
  double tol = 1e-9;
  int search_bound = 400;
  int jobs = 1;
  Clock::time_point start = Clock::now();

  SuiteCache& cache() {
    if (!cache_) cache_ = std::make_unique<SuiteCache>(cache_dir, tol);
    return *cache_;
  }

 private:
  std::unique_ptr<SuiteCache> cache_;
};

void emit(const CliState& st, std::ostream& out, const std::string& command, json payload,
          json checks, json context = json::object()) {
  json doc{{"schema", kReportSchemaVersion},
           {"command", command},
           {"context", std::move(context)},
           {"payload", std::move(payload)},
           {"checks", std::move(checks)},
           {"timing_ms",
            std::chrono::duration<double, std::milli>(Clock::now() - st.start).count()}};
  out << doc.dump(2) << "\n";
}

int orbit_tag(const std::vector<Perm>& conj, std::vector<int>& tags, int idx) {
  if (tags[idx] >= 0) return tags[idx];
  int tag = idx;
  for (const auto& p : conj) tag = std::min(tag, static_cast<int>(p[idx]));
  for (const auto& p : conj) tags[p[idx]] = tag;
  return tag;
}

int cmd_pplus(CliState& st, const ContextSpec& spec, std::ostream& out) {
  const auto& b = st.cache().get(spec_id(spec), spec.level);
  const LevelContext& ctx = *b.ctx;
  const auto conj = conjugations(ctx);
  std::vector<int> tags(ctx.size(), -1);
  json rows = json::array();
  for (int i = 0; i < ctx.size(); ++i) {
    int current_order = 0;
    for (const auto& c : b.currents)
      if (c.rep_index == i) current_order = c.order;
    rows.push_back(json{{"index", i},
                        {"labels", weight_to_string(ctx.weight(i))},
                        {"level0", ctx.level0(ctx.weight(i))},
                        {"qdim", fmt15(qdim(ctx, ctx.weight(i)))},
                        {"simple_current_order", current_order},
                        {"conjugation_orbit", orbit_tag(conj, tags, i)}});
  }
  if (st.format == "csv") {
    out << "index,labels,level0,qdim,simple_current_order,conjugation_orbit\n";
    for (const auto& r : rows)
      out << r["index"] << ",\"" << r["labels"].get<std::string>() << "\"," << r["level0"] << ','
          << r["qdim"].get<std::string>() << ',' << r["simple_current_order"] << ','
          << r["conjugation_orbit"] << "\n";
    return 0;
  }
  emit(st, out, "pplus", rows, json::array(), context_json(ctx));
  return 0;
}

int cmd_smatrix(CliState& st, const ContextSpec& spec, std::ostream& out) {
  const auto& b = st.cache().get(spec_id(spec), spec.level);
  const SMatrix& S = b.S;
  json checks = json::array(
      {json{{"name", "symmetry"}, {"pass", S.symmetry_residual < S.tol},
            {"residual", S.symmetry_residual}},
       json{{"name", "unitarity"}, {"pass", S.unitarity_residual < S.tol},
            {"residual", S.unitarity_residual}},
       json{{"name", "S2=C"}, {"pass", S.s2c_residual < S.tol}, {"residual", S.s2c_residual}},
       json{{"name", "row0-positive"}, {"pass", S.row0_min > 0}, {"residual", S.row0_min}}});
  if (st.format == "csv") {
    out << "row,col,re,im\n";
    for (int i = 0; i < S.size(); ++i)
      for (int j = 0; j < S.size(); ++j)
        out << i << ',' << j << ',' << fmt15(S(i, j).real()) << ',' << fmt15(S(i, j).imag())
            << "\n";
    return 0;
  }
  json rows = json::array();
  for (int i = 0; i < S.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < S.size(); ++j)
      row.push_back(json::array({fmt15(S(i, j).real()), fmt15(S(i, j).imag())}));
    rows.push_back(std::move(row));
  }
  emit(st, out, "smatrix", rows, std::move(checks), context_json(*b.ctx));
  return 0;
}

int cmd_qdim(CliState& st, const ContextSpec& spec, const std::string& weight_text,
             std::ostream& out) {
  const auto& b = st.cache().get(spec_id(spec), spec.level);
  const LevelContext& ctx = *b.ctx;
  json rows = json::array();
  if (!weight_text.empty()) {
    const Weight w = parse_weight(weight_text, ctx.rank());
    ctx.index_of(w);
    rows.push_back(json{{"labels", weight_to_string(w)}, {"qdim", fmt15(qdim(ctx, w))}});
  } else {
    for (int i = 0; i < ctx.size(); ++i)
      rows.push_back(json{{"labels", weight_to_string(ctx.weight(i))},
                          {"qdim", fmt15(qdim(ctx, ctx.weight(i)))}});
  }
  if (st.format == "csv") {
    out << "labels,qdim\n";
    for (const auto& r : rows)
      out << '"' << r["labels"].get<std::string>() << "\"," << r["qdim"].get<std::string>()
          << "\n";
    return 0;
  }
  emit(st, out, "qdim", rows, json::array(), context_json(ctx));
  return 0;
}

int cmd_fusion(CliState& st, const ContextSpec& spec, const std::string& lhs,
               const std::string& rhs, std::ostream& out) {
  const auto& b = st.cache().get(spec_id(spec), spec.level);
  const LevelContext& ctx = *b.ctx;
  const Weight la = parse_weight(lhs, ctx.rank());
  const Weight mu = parse_weight(rhs, ctx.rank());
  const int a = ctx.index_of(la), bb = ctx.index_of(mu);
  json rows = json::array();
  for (auto [c, v] : b.table.product(a, bb))
    rows.push_back(json{{"labels", weight_to_string(ctx.weight(c))}, {"coeff", v}});
  // cross-check this row against the Verlinde sums
  double residual = 0;
  bool match = true;
  for (int c = 0; c < ctx.size(); ++c) {
    std::complex<double> acc = 0;
    for (int d = 0; d < ctx.size(); ++d)
      acc += b.S(a, d) * b.S(bb, d) * std::conj(b.S(c, d)) / b.S(0, d);
    const double re = std::round(acc.real());
    residual = std::max({residual, std::abs(acc.imag()), std::abs(acc.real() - re)});
    if (static_cast<std::int64_t>(re) != b.table.coeff(a, bb, c)) match = false;
  }
  json checks = json::array({json{{"name", "verlinde-row"}, {"pass", match && residual < 1e-6},
                                  {"residual", residual}}});
  if (st.format == "csv") {
    out << "labels,coeff\n";
    for (const auto& r : rows)
      out << '"' << r["labels"].get<std::string>() << "\"," << r["coeff"] << "\n";
    return 0;
  }
  emit(st, out, "fusion", rows, std::move(checks), context_json(ctx));
  return 0;
}

int cmd_autos(CliState& st, const ContextSpec& spec, const std::string& mode, std::ostream& out) {
  const auto& b = st.cache().get(spec_id(spec), spec.level);
  auto to_json = [](const std::vector<FusionSymmetry>& group) {
    json arr = json::array();
    for (const auto& s : group)
      arr.push_back(json{{"cycles", cycle_notation(s.perm)},
                         {"order", perm_order(s.perm)},
                         {"source", source_name(s.source)},
                         {"label", s.label}});
    return arr;
  };
  json payload;
  json checks = json::array();
  if (mode == "constructed") {
    payload = to_json(expected_automorphisms(*b.ctx, b.table, b.S));
  } else if (mode == "bruteforce") {
    payload = to_json(enumerate_automorphisms(*b.ctx, b.table, b.S, st.search_bound));
  } else if (mode == "compare") {
    auto brute = enumerate_automorphisms(*b.ctx, b.table, b.S, st.search_bound);
    auto constructed = expected_automorphisms(*b.ctx, b.table, b.S);
    std::set<Perm> bs, cs;
    for (const auto& s : brute) bs.insert(s.perm);
    for (const auto& s : constructed) cs.insert(s.perm);
    payload = json{{"bruteforce", to_json(brute)},
                   {"constructed", to_json(constructed)},
                   {"order", bs.size()}};
    checks.push_back(json{{"name", "brute-equals-constructed"}, {"pass", bs == cs},
                          {"detail", std::to_string(bs.size()) + " vs " +
                                         std::to_string(cs.size()) + " elements"}});
  } else {
    throw UsageError("autos mode must be constructed|bruteforce|compare");
  }
  emit(st, out, "autos", std::move(payload), std::move(checks), context_json(*b.ctx));
  bool all_pass = true;
  for (const auto& c : checks)
    if (!c["pass"].get<bool>()) all_pass = false;
  return all_pass ? 0 : 1;
}

int cmd_iso(CliState& st, const ContextSpec& sa, const ContextSpec& sb, std::ostream& out) {
  const auto& a = st.cache().get(spec_id(sa), sa.level);
  const auto& b = st.cache().get(spec_id(sb), sb.level);
  const auto fa = fingerprint(*a.ctx, a.S, a.table);
  const auto fb = fingerprint(*b.ctx, b.S, b.table);
  json payload{{"fingerprint_a", fa.to_string()},
               {"fingerprint_b", fb.to_string()},
               {"fingerprints_match", fa.matches(fb)}};
  json checks = json::array();
  bool found = false;
  if (fa.matches(fb)) {
    auto iso = find_isomorphism(*a.ctx, a.table, *b.ctx, b.table, st.search_bound);
    found = iso.has_value();
    payload["isomorphic"] = found;
    if (iso) {
      json pairs = json::array();
      for (int i = 0; i < a.ctx->size(); ++i)
        pairs.push_back(json::array({weight_to_string(a.ctx->weight(i)),
                                     weight_to_string(b.ctx->weight((*iso)[i]))}));
      payload["bijection"] = std::move(pairs);
      checks.push_back(json{{"name", "bijection-verified"},
                            {"pass", is_fusion_isomorphism(a.table, b.table, *iso)}});
    }
  } else {
    payload["isomorphic"] = false;
  }
  emit(st, out, "iso", std::move(payload), std::move(checks),
       json{{"a", context_json(*a.ctx)}, {"b", context_json(*b.ctx)}});
  return 0;
}

int cmd_verify(CliState& st, std::ostream& out) {
  VerifyOptions opts;
  opts.jobs = st.jobs;
  opts.search_bound = st.search_bound;
  // the acceptance thresholds are pinned; only the cache directory carries over
  SuiteCache pinned(st.cache_dir);
  const auto results = run_acceptance(pinned, opts);
  json rows = json::array();
  bool all = true;
  for (const auto& r : results) {
    rows.push_back(json{{"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    all = all && r.pass;
  }
  emit(st, out, "verify", std::move(rows), json::array());
  return all ? 0 : 1;
}

}  // namespace

ContextSpec parse_context_spec(const std::string& token) {
  ContextSpec spec;
  if (token.find('=') != std::string::npos) {
    // family=A rank=3 level=4 (space- or comma-separated)
    std::string cleaned = token;
    for (auto& c : cleaned)
      if (c == ',') c = ' ';
    std::istringstream is(cleaned);
    std::string kv;
    bool f = false, r = false, l = false;
    while (is >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("bad context token '" + token + "'");
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "family" && val.size() == 1) { spec.family = val[0]; f = true; }
      else if (key == "rank") { spec.rank = std::stoi(val); r = true; }
      else if (key == "level") { spec.level = std::stoi(val); l = true; }
      else throw UsageError("bad context field '" + kv + "'");
    }
    if (!(f && r && l)) throw UsageError("context needs family, rank and level: '" + token + "'");
  } else {
    // compact form: A3k4
    const auto kpos = token.find_first_of("kK", 1);
    if (token.size() < 4 || kpos == std::string::npos)
      throw UsageError("bad context token '" + token + "' (expected e.g. A3k4)");
    spec.family = token[0];
    try {
      spec.rank = std::stoi(token.substr(1, kpos - 1));
      spec.level = std::stoi(token.substr(kpos + 1));
    } catch (const std::exception&) {
      throw UsageError("bad context token '" + token + "'");
    }
  }
  family_from_letter(spec.family);
  if (spec.level < 1) throw UsageError("level must be >= 1");
  return spec;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"affine fusion rings: weights, S-matrices, fusion rules, symmetries"};
  app.require_subcommand(1);

  CliState st;
  if (const char* env = std::getenv("AFR_CACHE_DIR")) st.cache_dir = env;
  app.add_option("--cache-dir", st.cache_dir, "fusion table cache directory");
  app.add_option("--format", st.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", st.tol, "numeric tolerance for S-matrix checks");
  app.add_option("--search-bound", st.search_bound, "max |P+| for exhaustive searches");
  app.add_option("--jobs", st.jobs, "worker threads for the verify suite");

  std::string spec_token, spec_token_b, weight_a, weight_b, mode = "compare";

  auto* pplus = app.add_subcommand("pplus", "list the level-k weight set");
  pplus->add_option("context", spec_token, "context, e.g. A3k4")->required();

  auto* smatrix_cmd = app.add_subcommand("smatrix", "Kac-Peterson matrix with residuals");
  smatrix_cmd->add_option("context", spec_token)->required();

  auto* qdim_cmd = app.add_subcommand("qdim", "q-dimensions");
  qdim_cmd->add_option("context", spec_token)->required();
  qdim_cmd->add_option("weight", weight_a, "optional single weight, labels as \"l1 l2 ...\"");

  auto* fusion_cmd = app.add_subcommand("fusion", "fusion product of two weights");
  fusion_cmd->add_option("context", spec_token)->required();
  fusion_cmd->add_option("lambda", weight_a)->required();
  fusion_cmd->add_option("mu", weight_b)->required();

  auto* autos_cmd = app.add_subcommand("autos", "fusion-symmetry group");
  autos_cmd->add_option("context", spec_token)->required();
  autos_cmd->add_option("--mode", mode, "constructed|bruteforce|compare");

  auto* iso_cmd = app.add_subcommand("iso", "decide fusion-ring isomorphism");
  iso_cmd->add_option("context_a", spec_token)->required();
  iso_cmd->add_option("context_b", spec_token_b)->required();

  app.add_subcommand("verify", "run the full verification suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand("pplus")) return cmd_pplus(st, spec_of(spec_token), out);
    if (app.got_subcommand("smatrix")) return cmd_smatrix(st, spec_of(spec_token), out);
    if (app.got_subcommand("qdim")) return cmd_qdim(st, spec_of(spec_token), weight_a, out);
    if (app.got_subcommand("fusion"))
      return cmd_fusion(st, spec_of(spec_token), weight_a, weight_b, out);
    if (app.got_subcommand("autos")) return cmd_autos(st, spec_of(spec_token), mode, out);
    if (app.got_subcommand("iso"))
      return cmd_iso(st, spec_of(spec_token), spec_of(spec_token_b), out);
    if (app.got_subcommand("verify")) return cmd_verify(st, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SearchBoundError& e) {
    err << "search bound exceeded: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace afr
