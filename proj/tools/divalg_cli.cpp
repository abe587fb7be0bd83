// Batch front end: climb, dihedral, ck1 and verify. Output goes to stdout in
// markdown, csv or json; every run is deterministic given its flags.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "divalg/ck1.hpp"
#include "divalg/cyclic_algebra.hpp"
#include "divalg/literal.hpp"
#include "divalg/maxsub.hpp"
#include "divalg/verify.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace divalg;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitYInG = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitTooLarge = 4;
constexpr int kExitUsage = 64;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, json>> fields;
  std::vector<Table> tables;
  int exit_code = kExitOk;
  std::string error;

  void field(const std::string& key, json value) { fields.emplace_back(key, std::move(value)); }
};

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

void render(const Report& rep, const std::string& format, std::ostream& os) {
  if (format == "json") {
    json doc;
    doc["command"] = rep.command;
    doc["exit_code"] = rep.exit_code;
    if (!rep.error.empty()) doc["error"] = rep.error;
    json fields = json::object();
    for (const auto& [k, v] : rep.fields) fields[k] = v;
    doc["fields"] = fields;
    json tables = json::object();
    for (const auto& t : rep.tables) {
      json rows = json::array();
      for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
        rows.push_back(obj);
      }
      tables[t.name] = rows;
    }
    doc["tables"] = tables;
    os << doc.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    os << "key,value\n";
    os << "command," << csv_escape(rep.command) << '\n';
    for (const auto& [k, v] : rep.fields) os << csv_escape(k) << ',' << csv_escape(cell_text(v)) << '\n';
    if (!rep.error.empty()) os << "error," << csv_escape(rep.error) << '\n';
    os << "exit_code," << rep.exit_code << '\n';
    for (const auto& t : rep.tables) {
      os << '\n' << "# " << t.name << '\n';
      for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_escape(t.columns[c]);
      os << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(cell_text(row[c]));
        os << '\n';
      }
    }
    return;
  }
  os << "# " << rep.command << "\n\n";
  for (const auto& [k, v] : rep.fields) os << "- " << k << ": " << md_escape(cell_text(v)) << '\n';
  if (!rep.error.empty()) os << "- error: " << md_escape(rep.error) << '\n';
  os << "- exit_code: " << rep.exit_code << '\n';
  for (const auto& t : rep.tables) {
    os << "\n## " << t.name << "\n\n|";
    for (const auto& c : t.columns) os << ' ' << c << " |";
    os << "\n|";
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << " --- |";
    os << '\n';
    for (const auto& row : t.rows) {
      os << '|';
      for (const auto& v : row) os << ' ' << md_escape(cell_text(v)) << " |";
      os << '\n';
    }
  }
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::YInG: return kExitYInG;
    case ErrorCode::PrecisionExhausted: return kExitPrecision;
    case ErrorCode::GroupTooLarge: return kExitTooLarge;
    case ErrorCode::ParseError: return kExitUsage;
    default: return kExitFailed;
  }
}

// ---------------------------------------------------------------- climb

struct ClimbArgs {
  std::string model = "constructible";
  std::string y, gamma;
  std::string order = "16";
  std::string max_order = "256";
};

template <FieldModel M>
void fill_climb(Report& rep, const Sphere<M>& sphere, const ClimbResult<typename M::Elem>& res, bool verified) {
  const M& m = sphere.model();
  rep.field("c", m.to_string(res.trace.normalized_c));
  rep.field("s", m.to_string(res.trace.normalized_s));
  rep.field("step_bound", res.trace.step_bound);
  rep.field("y_count", res.word.y_count());
  rep.field("exact_latitudes", res.trace.exact_latitudes);
  rep.field("word", word_to_string(m, res.word));
  rep.field("verified", verified);
  Table t{"trace", {"step", "generator", "latitude_from", "latitude_to"}, {}};
  long k = 0;
  for (const auto& st : res.trace.steps) {
    t.rows.push_back({++k, st.generator, m.to_string(st.latitude_from), m.to_string(st.latitude_to)});
  }
  rep.tables.push_back(std::move(t));
}

void run_climb(Report& rep, const ClimbArgs& a) {
  rep.field("model", a.model);
  rep.field("y", a.y);
  rep.field("gamma", a.gamma);
  if (a.model == "constructible") {
    const Sphere<ConstructibleModel> sphere;
    const auto& h = sphere.algebra();
    const auto y = parse_quaternion(h, a.y);
    const auto gamma = parse_unit_pure(h, a.gamma);
    const auto res = sphere.climb(y, gamma);
    const bool ok = sphere.sends_i_to(sphere.word_eval_projective(res.word), gamma);
    fill_climb(rep, sphere, res, ok);
    rep.exit_code = ok ? kExitOk : kExitFailed;
    return;
  }
  if (a.model != "puiseux") throw Error(ErrorCode::ParseError, "unknown model '" + a.model + "'");
  PrecisionPolicy policy;
  policy.default_order = Dyadic::parse(a.order);
  policy.max_order = Dyadic::parse(a.max_order);
  if (policy.default_order.sign() <= 0 || policy.max_order < policy.default_order) {
    throw Error(ErrorCode::ParseError, "need 0 < order <= max-order");
  }
  const PuiseuxModel base;
  rep.field("verification_order", base.verification_order.to_string());
  with_precision_retry(policy, [&](const Dyadic& order) {
    PuiseuxModel m;
    m.order = order;
    const Sphere<PuiseuxModel> sphere(m);
    const auto& h = sphere.algebra();
    const auto y = parse_quaternion(h, a.y);
    const auto gamma = parse_unit_pure(h, a.gamma);
    const auto res = sphere.climb(y, gamma);
    if (!sphere.sends_i_to(sphere.word_eval(res.word), gamma)) {
      throw Error(ErrorCode::PrecisionExhausted, "residual not verified at order " + order.to_string());
    }
    rep.field("order", order.to_string());
    fill_climb(rep, sphere, res, true);
    return 0;
  });
  rep.exit_code = kExitOk;
}

// ---------------------------------------------------------------- dihedral

struct DihedralArgs {
  long q = 2;
  long n = 2;
  long precision = 20;
  long samples = 2000;
};

void run_dihedral(Report& rep, const DihedralArgs& a, std::uint64_t seed) {
  const CaReport r = ca_report(a.q, a.n, a.precision, seed, a.samples);
  rep.field("q", r.q);
  rep.field("n", r.n);
  rep.field("ell", r.ell);
  rep.field("m", r.m);
  rep.field("precision", r.precision);
  rep.field("unit_part_order", r.unit_part_order);
  rep.field("order", r.order);
  rep.field("order_ok", r.order_ok);
  rep.field("dihedral", r.dihedral ? json(*r.dihedral) : json("not claimed"));
  rep.field("nonnormal_ok", r.nonnormal_ok);
  rep.field("samples", r.samples);
  rep.field("images_generate", r.images_generate);
  rep.field("homomorphism_ok", r.homomorphism_ok);
  rep.field("ok", r.ok());
  const SemidirectZnZm sd = ca_quotient_group(a.q, a.n);
  const FiniteGroup g = sd.group();
  Table t{"maximal_subgroups", {"index", "order", "normal", "generators"}, {}};
  for (const auto& s : r.maximal) {
    std::string gens;
    for (int e : s.generators) gens += (gens.empty() ? "" : " ") + g.label(e);
    t.rows.push_back({s.index, s.order, s.normal, gens});
  }
  rep.tables.push_back(std::move(t));
  rep.exit_code = r.ok() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- ck1

std::pair<long, long> parse_range(const std::string& s) {
  auto to_long = [&](const std::string& part) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty()) throw Error(ErrorCode::ParseError, "bad range '" + s + "'");
    return v;
  };
  const auto dots = s.find("..");
  const long lo = to_long(dots == std::string::npos ? s : s.substr(0, dots));
  const long hi = dots == std::string::npos ? lo : to_long(s.substr(dots + 2));
  if (lo < 1 || hi < lo || hi > 1000) throw Error(ErrorCode::ParseError, "need 1 <= t <= 1000 in '" + s + "'");
  return {lo, hi};
}

void add_normal_primes(Report& rep, ModelKind kind) {
  Table t{"normal_primes", {"p", "witness", "certificate"}, {}};
  for (const auto& np : ck_normal_primes(kind)) t.rows.push_back({np.p, np.witness, np.certificate});
  rep.tables.push_back(std::move(t));
}

void run_ck1(Report& rep, const std::string& model, const std::string& range) {
  const auto [lo, hi] = parse_range(range);
  rep.field("model", model);
  rep.field("t", std::to_string(lo) + ".." + std::to_string(hi));
  if (model == "puiseux") {
    Table t{"orders", {"t", "order_lower_bound", "exact_for_ideal_residue", "basis"}, {}};
    for (long k = lo; k <= hi; ++k) {
      const auto r = ck_mt_order(k);
      t.rows.push_back({k, r.order_lower_bound, r.exact_for_ideal_residue, r.basis_note});
    }
    rep.tables.push_back(std::move(t));
    add_normal_primes(rep, ModelKind::Puiseux);
  } else if (model == "constructible") {
    const ConstructibleModel cm;
    Table t{"quaternion", {"algebra", "t", "ck1_trivial"}, {}};
    for (long k = std::max(lo, 1L); k <= std::min(hi, 2L); ++k) {
      t.rows.push_back({"(-1,-1)", k, ck_quaternion_trivial(cm, TowerElement(-1), TowerElement(-1), static_cast<int>(k))});
    }
    rep.tables.push_back(std::move(t));
    add_normal_primes(rep, ModelKind::Constructible);
  } else {
    throw Error(ErrorCode::ParseError, "unknown model '" + model + "'");
  }
  rep.exit_code = kExitOk;
}

// ---------------------------------------------------------------- verify

void run_verify(Report& rep, const std::string& suite, const SuiteOptions& opt) {
  rep.field("suite", suite);
  rep.field("seed", opt.seed);
  rep.field("scale", opt.scale);
  std::vector<CheckResult> results;
  try {
    results = run_suite(suite, opt);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  Table t{"checks", {"suite", "check", "passed", "total", "status", "counterexample"}, {}};
  long failed = 0;
  for (const auto& r : results) {
    failed += r.ok() ? 0 : 1;
    t.rows.push_back({r.suite, r.name, r.passed, r.total, r.ok() ? "PASS" : "FAIL", r.counterexample});
  }
  rep.field("checks", static_cast<long>(results.size()));
  rep.field("failed", failed);
  rep.tables.push_back(std::move(t));
  rep.exit_code = failed == 0 ? kExitOk : kExitFailed;
}

long default_precision() {
  const char* env = std::getenv("DIVALG_PRECISION");
  if (env == nullptr || *env == '\0') return 20;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 10000) throw Error(ErrorCode::ParseError, "DIVALG_PRECISION must be in 1..10000");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with quaternion and cyclic division algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "markdown";
  std::uint64_t seed = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"markdown", "csv", "json"}));
  app.add_option("--seed", seed, "Random seed");

  ClimbArgs climb;
  auto* climb_cmd = app.add_subcommand("climb", "Write a group word sending i to gamma");
  climb_cmd->add_option("--model", climb.model, "constructible or puiseux")
      ->check(CLI::IsMember({"constructible", "puiseux"}));
  climb_cmd->add_option("--y", climb.y, "Quaternion literal for y")->required();
  climb_cmd->add_option("--gamma", climb.gamma, "Pure quaternion literal for the target")->required();
  climb_cmd->add_option("--order", climb.order, "Puiseux working order (dyadic)");
  climb_cmd->add_option("--max-order", climb.max_order, "Largest order tried after doubling");

  DihedralArgs dihedral;
  bool precision_given = false;
  auto* dihedral_cmd = app.add_subcommand("dihedral", "Quotient of a cyclic division algebra over Q_l");
  dihedral_cmd->add_option("--q", dihedral.q, "Residue field size (a prime power)")->required();
  dihedral_cmd->add_option("--n", dihedral.n, "Degree of the cyclic algebra");
  auto* precision_opt = dihedral_cmd->add_option("--precision", dihedral.precision, "l-adic precision N");
  dihedral_cmd->add_option("--samples", dihedral.samples, "Random elements for the homomorphism checks");

  std::string ck1_model = "puiseux";
  std::string ck1_range = "1..6";
  auto* ck1_cmd = app.add_subcommand("ck1", "CK1 orders and normal maximal subgroups");
  ck1_cmd->add_option("--model", ck1_model, "constructible or puiseux")
      ->check(CLI::IsMember({"constructible", "puiseux"}));
  ck1_cmd->add_option("--t", ck1_range, "t or a range lo..hi, at most 1000");

  std::string suite;
  SuiteOptions suite_opt;
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites");
  verify_cmd->add_option("--suite", suite, "fields, quat, rotations, maxsub, lemmas, cyclic or all")
      ->required()
      ->check(CLI::IsMember({"fields", "quat", "rotations", "maxsub", "lemmas", "cyclic", "all"}));
  verify_cmd->add_option("--scale", suite_opt.scale, "Multiplier for sample counts")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threads", suite_opt.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  precision_given = precision_opt->count() > 0;

  Report rep;
  try {
    if (*climb_cmd) {
      rep.command = "climb";
      run_climb(rep, climb);
    } else if (*dihedral_cmd) {
      rep.command = "dihedral";
      if (!precision_given) dihedral.precision = default_precision();
      run_dihedral(rep, dihedral, seed);
    } else if (*ck1_cmd) {
      rep.command = "ck1";
      run_ck1(rep, ck1_model, ck1_range);
    } else if (*verify_cmd) {
      rep.command = "verify";
      suite_opt.seed = seed;
      run_verify(rep, suite, suite_opt);
    }
  } catch (const Error& e) {
    rep.exit_code = exit_code_for(e);
    rep.error = e.what();
  } catch (const std::exception& e) {
    rep.exit_code = kExitFailed;
    rep.error = e.what();
  }
  render(rep, format, std::cout);
  if (!rep.error.empty()) std::cerr << rep.error << '\n';
  return rep.exit_code;
}
