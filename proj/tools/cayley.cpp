#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cayley/cayley.hpp"

using json = nlohmann::json;
using namespace cayley;

namespace {

enum Exit { kOk = 0, kNo = 1, kInvalid = 2, kPrecondition = 3, kBudget = 4 };

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotCentral:
    case ErrorCode::NotDGenerated:
    case ErrorCode::FactorNotDGenerated:
      return kPrecondition;
    case ErrorCode::BudgetExceeded:
      return kBudget;
    default:
      return kInvalid;
  }
}

struct Options {
  bool json = false;
  unsigned seed = 20240601;
  RunConfig run;
};

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json)
    std::cout << j.dump() << '\n';
  else
    std::cout << text;
}

json perm_json(const Perm& p) { return json(p.images()); }

json set_json(const ElementSet& s) { return json(s.elements()); }

GroupTable load_group(const std::string& path) {
  const auto f = read_table_file(path);
  return validate_group(f.table);
}

QuasigroupTable load_quasigroup(const std::string& path) { return validate_quasigroup(read_table_file(path).table); }

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

WLVersion parse_version(const std::string& s) {
  if (s == "I" || s == "1") return WLVersion::I;
  if (s == "II" || s == "2") return WLVersion::II;
  throw Error(ErrorCode::ParseError, "version must be I or II");
}

WLMode parse_mode(const std::string& s) {
  if (s == "counting") return WLMode::Counting;
  if (s == "count_free" || s == "count-free") return WLMode::CountFree;
  throw Error(ErrorCode::ParseError, "mode must be counting or count_free");
}

// An automorphism of `plus` given as an integer scalar or a comma-separated
// image list.
Perm parse_automorphism(const GroupTable& plus, const std::string& spec) {
  if (spec.find(',') == std::string::npos) {
    try {
      return scalar_automorphism(plus, std::stoi(spec));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "bad automorphism: " + spec);
    }
  }
  std::vector<int> img;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      img.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad automorphism: " + spec);
    }
  }
  if (static_cast<int>(img.size()) != plus.size()) throw Error(ErrorCode::ParseError, "automorphism has wrong length");
  return Perm(std::move(img));
}

Perm random_perm(int n, std::mt19937& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(std::move(v));
}

int cmd_validate(const Options& opt, const std::string& path) {
  const auto f = read_table_file(path);
  json j{{"status", "valid"}, {"kind", f.kind == TableKind::Group ? "group" : "quasigroup"}, {"n", f.table.size()}};
  if (f.kind == TableKind::Group) {
    const auto g = validate_group(f.table);
    j["identity"] = g.identity();
    j["abelian"] = g.is_abelian();
  } else {
    validate_quasigroup(f.table);
  }
  emit(opt, j, "valid " + j["kind"].get<std::string>() + " of order " + std::to_string(f.table.size()) + "\n");
  return kOk;
}

int cmd_wl(const Options& opt, const std::vector<std::string>& files) {
  const WLConfig cfg = opt.run.wl();
  const auto g = load_group(files[0]);
  json j{{"k", cfg.k}, {"version", to_string(cfg.version)}, {"mode", to_string(cfg.mode)}};
  if (files.size() == 1) {
    const auto s = stable_coloring(g, cfg);
    const auto sizes = class_sizes(s.coloring.colors, s.coloring.num_colors);
    j["rounds_used"] = s.rounds_used;
    j["class_sizes"] = sizes;
    j["distinguished"] = false;
    j["witness_color"] = nullptr;
    j["status"] = "stable";
    emit(opt, j, "rounds " + std::to_string(s.rounds_used) + ", classes: " + join(sizes) + "\n");
    return kOk;
  }
  const auto h = load_group(files[1]);
  const auto r = wl_distinguishes(g, h, cfg);
  j["rounds_used"] = r.rounds_used;
  j["class_sizes"] = r.class_sizes;
  j["distinguished"] = r.distinguished;
  j["witness_color"] = r.witness_color ? json(*r.witness_color) : json(nullptr);
  j["status"] = r.distinguished ? "distinguished" : "not distinguished";
  emit(opt, j, std::string(r.distinguished ? "distinguished" : "not distinguished") + " after " + std::to_string(r.rounds_used) + " rounds\n");
  return r.distinguished ? kNo : kOk;
}

int cmd_decompose(const Options& opt, const std::string& path, bool expect_decomposable) {
  const auto g = load_group(path);
  const auto d = decompose(g);
  json factors = json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    factors.push_back({{"order", d.factors[i].count()}, {"elements", set_json(d.factors[i])}, {"generators", d.generators[i]}});
    text << "factor " << i << ": order " << d.factors[i].count() << "\n";
  }
  const bool unique = decomposition_is_unique(g, d);
  text << (unique ? "unique" : "not unique") << "\n";
  const std::string status = d.factors.size() > 1 ? "decomposable" : "indecomposable";
  emit(opt, json{{"status", status}, {"factors", factors}, {"unique", unique}}, text.str());
  return expect_decomposable && d.factors.size() <= 1 ? kNo : kOk;
}

int cmd_canon(const Options& opt, const std::string& path, const std::string& sidecar) {
  const auto g = load_group(path);
  const auto c = canonize_direct_product(g, opt.run.d);
  const std::string text = write_table_text(TableKind::Group, c.canonical_table.table());
  json side{{"labels", perm_json(c.labels)}, {"factor_orders", c.factor_orders}};
  if (!sidecar.empty()) {
    std::ofstream out(sidecar);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + sidecar);
    out << side.dump() << '\n';
  }
  json j = side;
  j["status"] = "ok";
  j["generating_tuple"] = c.generating_tuple;
  j["table"] = text;
  emit(opt, j, text);
  return kOk;
}

json iso_json(const std::string& method, const std::string& decided_by, std::optional<bool> iso, const std::string& status) {
  return {{"method", method}, {"decided_by", decided_by}, {"isomorphic", iso ? json(*iso) : json(nullptr)}, {"status", status}};
}

int finish_iso(const Options& opt, json j) {
  const auto& iso = j["isomorphic"];
  std::string text = j["status"].get<std::string>() + " (" + j["decided_by"].get<std::string>() + ")\n";
  emit(opt, j, text);
  return iso.is_boolean() && !iso.get<bool>() ? kNo : kOk;
}

int cmd_iso(const Options& opt, const std::string& p1, const std::string& p2, const std::string& method) {
  const auto f1 = read_table_file(p1);
  const auto f2 = read_table_file(p2);
  const bool groups = f1.kind == TableKind::Group && f2.kind == TableKind::Group;
  if (method == "central-auto") {
    const auto q1 = validate_quasigroup(f1.table);
    const auto q2 = validate_quasigroup(f2.table);
    if (recognize_central(q1)) {
      const auto r = central_iso(q1, q2, opt.run.aut_cap);
      auto j = iso_json(method, "central", r.status == CentralIsoStatus::Isomorphic, to_string(r.status));
      if (r.isomorphism) j["mapping"] = perm_json(*r.isomorphism);
      return finish_iso(opt, j);
    }
    if (!groups) {
      const auto m = brute_iso_quasigroup(q1, q2, opt.run.time_budget);
      auto j = iso_json(method, "brute", m.has_value(), m ? "isomorphic" : "not isomorphic");
      if (m) j["mapping"] = perm_json(*m);
      return finish_iso(opt, j);
    }
  }
  if (!groups && method != "brute") throw Error(ErrorCode::InvalidTable, "method " + method + " needs two group tables");
  if (!groups) {
    const auto m = brute_iso_quasigroup(validate_quasigroup(f1.table), validate_quasigroup(f2.table), opt.run.time_budget);
    auto j = iso_json(method, "brute", m.has_value(), m ? "isomorphic" : "not isomorphic");
    if (m) j["mapping"] = perm_json(*m);
    return finish_iso(opt, j);
  }
  const auto g = validate_group(f1.table);
  const auto h = validate_group(f2.table);
  if (method == "brute") {
    const auto m = brute_iso_group(g, h, opt.run.time_budget);
    auto j = iso_json(method, "brute", m.has_value(), m ? "isomorphic" : "not isomorphic");
    if (m) j["mapping"] = perm_json(*m);
    return finish_iso(opt, j);
  }
  if (method == "wl") {
    const auto r = wl_distinguishes(g, h, opt.run.wl());
    if (r.distinguished) return finish_iso(opt, iso_json(method, "wl", false, "not isomorphic"));
    return finish_iso(opt, iso_json(method, "wl", std::nullopt, "not distinguished"));
  }
  // canon, and central-auto on non-central groups
  if (g.size() != h.size()) return finish_iso(opt, iso_json(method, "canon", false, "not isomorphic"));
  const auto cg = canonize_direct_product(g, opt.run.d);
  const auto ch = canonize_direct_product(h, opt.run.d);
  const bool same = cg.canonical_table == ch.canonical_table;
  auto j = iso_json(method, "canon", same, same ? "isomorphic" : "not isomorphic");
  if (same) j["mapping"] = perm_json(cg.labels * ch.labels.inverse());
  return finish_iso(opt, j);
}

int cmd_central_recognize(const Options& opt, const std::string& path) {
  const auto q = load_quasigroup(path);
  const auto f = recognize_central(q);
  json j{{"central", f.has_value()}, {"status", f ? "central" : "not central"}};
  if (!f) {
    j["phi"] = nullptr;
    j["psi"] = nullptr;
    j["c"] = nullptr;
    j["group_orders"] = nullptr;
    emit(opt, j, "not central\n");
    return kOk;
  }
  j["phi"] = perm_json(f->phi);
  j["psi"] = perm_json(f->psi);
  j["c"] = f->c;
  j["group_orders"] = abelian_invariants(f->plus);
  j["medial"] = is_medial(q);
  emit(opt, j, "central: phi " + f->phi.to_string() + ", psi " + f->psi.to_string() + ", c " + std::to_string(f->c) + "\n");
  return kOk;
}

int cmd_central_iso(const Options& opt, const std::string& p1, const std::string& p2) {
  const auto q1 = load_quasigroup(p1);
  const auto q2 = load_quasigroup(p2);
  if (!recognize_central(q1)) {
    json j{{"isomorphic", nullptr}, {"status", "q1 not central"}, {"gamma", nullptr}, {"u", nullptr}};
    emit(opt, j, "first quasigroup is not central\n");
    return kPrecondition;
  }
  const auto r = central_iso(q1, q2, opt.run.aut_cap);
  json j{{"isomorphic", r.status == CentralIsoStatus::Isomorphic}, {"status", to_string(r.status)}};
  j["gamma"] = r.certificate ? perm_json(r.certificate->gamma) : json(nullptr);
  j["u"] = r.certificate ? json(r.certificate->u) : json(nullptr);
  if (r.isomorphism) j["mapping"] = perm_json(*r.isomorphism);
  std::string text = to_string(r.status);
  if (r.certificate) text += ": gamma " + r.certificate->gamma.to_string() + ", u " + std::to_string(r.certificate->u);
  emit(opt, j, text + "\n");
  return r.status == CentralIsoStatus::Isomorphic ? kOk : kNo;
}

int cmd_gen_group(const Options& opt, const std::string& name, bool relabeled) {
  auto g = group_by_name(name);
  if (relabeled) {
    std::mt19937 rng(opt.seed);
    g = relabel(g, random_perm(g.size(), rng));
  }
  std::cout << write_table_text(TableKind::Group, g.table());
  return kOk;
}

int cmd_gen_central(const Options& opt, const std::string& plus_name, const std::string& phi, const std::string& psi, int c, bool relabeled) {
  const auto plus = group_by_name(plus_name);
  const auto q = build_central(plus, parse_automorphism(plus, phi), parse_automorphism(plus, psi), c);
  MulTable t = q.table();
  if (relabeled) {
    std::mt19937 rng(opt.seed);
    t = relabel(t, random_perm(t.size(), rng));
  }
  std::cout << write_table_text(TableKind::Quasigroup, t);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplication-table algorithms for groups and quasigroups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::optional<Error> env_error;
  try {
    opt.run.apply_env();
  } catch (const Error& e) {
    env_error = e;
  }
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("--seed", opt.seed, "Seed for random relabelings");
  app.add_option("--mem-cap", opt.run.memory_cap, "WL memory cap in bytes")->check(CLI::PositiveNumber);
  app.add_option("--time-budget", opt.run.time_budget, "Time budget in seconds for brute-force searches")->check(CLI::PositiveNumber);
  app.add_option("--aut-cap", opt.run.aut_cap, "Cap on automorphism orbit states")->check(CLI::PositiveNumber);

  std::string file1, file2;
  std::vector<std::string> files;

  auto* validate = app.add_subcommand("validate", "Validate a table file");
  validate->add_option("file", file1)->required();

  std::string version = "II", mode = "counting";
  int rounds = -1;
  auto add_wl_opts = [&](CLI::App* c) {
    c->add_option("-k", opt.run.k, "WL dimension (1..5)");
    c->add_option("--rounds", rounds, "Round cap; negative means until stable");
    c->add_option("--version", version, "I or II");
    c->add_option("--mode", mode, "counting or count_free");
  };
  auto* wl = app.add_subcommand("wl", "Stable coloring of one group, or a distinguishing test for two");
  wl->add_option("files", files)->required()->expected(1, 2);
  add_wl_opts(wl);

  bool expect_decomposable = false;
  auto* dec = app.add_subcommand("decompose", "Fully refined direct product decomposition");
  dec->add_option("file", file1)->required();
  dec->add_flag("--expect-decomposable", expect_decomposable, "Exit 1 when the group is indecomposable");

  std::string sidecar;
  auto* canon = app.add_subcommand("canon", "Canonical table of a group");
  canon->add_option("file", file1)->required();
  canon->add_option("-d", opt.run.d, "Generator bound per factor");
  canon->add_option("--sidecar", sidecar, "Write labels and factor orders as JSON here");

  std::string method = "canon";
  auto* iso = app.add_subcommand("iso", "Isomorphism test");
  iso->add_option("file1", file1)->required();
  iso->add_option("file2", file2)->required();
  iso->add_option("--method", method, "canon, wl, brute or central-auto")->check(CLI::IsMember({"canon", "wl", "brute", "central-auto"}));
  iso->add_option("-d", opt.run.d, "Generator bound per factor");
  add_wl_opts(iso);

  auto* central = app.add_subcommand("central", "Central quasigroups");
  central->require_subcommand(1);
  auto* recog = central->add_subcommand("recognize", "Recognize a central quasigroup");
  recog->add_option("file", file1)->required();
  auto* ciso = central->add_subcommand("iso", "Isomorphism test with a central first argument");
  ciso->add_option("file1", file1)->required();
  ciso->add_option("file2", file2)->required();

  std::string name, phi = "1", psi = "1";
  int c = 0;
  bool relabeled = false;
  auto* gen = app.add_subcommand("gen", "Write a catalog group or central quasigroup table");
  gen->add_option("name", name, "Group name, e.g. S3xZ4 or Z2^3, or 'central'")->required();
  gen->add_option("--plus", file2, "Underlying Abelian group for 'central'");
  gen->add_option("--phi", phi, "Scalar or comma-separated images");
  gen->add_option("--psi", psi, "Scalar or comma-separated images");
  gen->add_option("-c", c, "Constant element");
  gen->add_flag("--relabel", relabeled, "Apply a random relabeling drawn from --seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (env_error) throw *env_error;
    if (rounds >= 0) opt.run.rounds = rounds;
    opt.run.version = parse_version(version);
    opt.run.mode = parse_mode(mode);
    if (*validate) return cmd_validate(opt, file1);
    if (*wl) return cmd_wl(opt, files);
    if (*dec) return cmd_decompose(opt, file1, expect_decomposable);
    if (*canon) return cmd_canon(opt, file1, sidecar);
    if (*iso) return cmd_iso(opt, file1, file2, method);
    if (*recog) return cmd_central_recognize(opt, file1);
    if (*ciso) return cmd_central_iso(opt, file1, file2);
    if (*gen) {
      if (name == "central") {
        if (file2.empty()) throw Error(ErrorCode::ParseError, "gen central needs --plus");
        return cmd_gen_central(opt, file2, phi, psi, c, relabeled);
      }
      return cmd_gen_group(opt, name, relabeled);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (opt.json) std::cout << json{{"status", "error"}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}.dump() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
