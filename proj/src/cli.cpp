#include "thg/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thg/error.hpp"
#include "thg/fox.hpp"
#include "thg/rhodes.hpp"
#include "thg/spacecat.hpp"
#include "thg/verify.hpp"

namespace thg::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string verb;
  std::string target;
  std::optional<int> n;
  std::optional<int> max_n;
  std::string format = "text";
  std::string catalog_dir;
  bool all = false;
};

// Usage errors detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ojson group_info_json(const GroupInfo& g) {
  return ojson{{"label", g.label}, {"order", g.order.to_string()}, {"free_rank", g.free_rank.get_str()},
               {"abelian", g.abelian}};
}

ojson tower_json(const TowerSummary& t) {
  ojson layers = ojson::array();
  for (const auto& l : t.layers)
    layers.push_back({{"degree", l.degree}, {"group", l.group.to_string()}, {"multiplicity", l.multiplicity.get_str()}});
  return ojson{{"base", group_info_json(t.base)},
               {"layers", layers},
               {"order", t.finite_order().to_string()},
               {"free_rank", t.free_rank().get_str()},
               {"direct_product", t.is_direct_product}};
}

ojson table_json(const CayleyGroup& g) {
  return ojson{{"label", g.label().empty() ? identify(g) : g.label()},
               {"order", g.order()},
               {"abelian", is_abelian(g)},
               {"elements", g.names()}};
}

std::string names_of(const CayleyGroup& g, const Subgroup& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.elements.size(); ++i) out += (i ? ", " : "") + g.name(s.elements[i]);
  return out + "}";
}

Catalog load_catalog(const Options& o) {
  std::string dir = o.catalog_dir;
  if (dir.empty())
    if (const char* env = std::getenv("THG_CATALOG_DIR"); env && *env) dir = env;
  if (dir.empty()) return Catalog::builtin();
  return Catalog::from_directory(dir);
}

Model resolve(const std::string& target, const Catalog& catalog) {
  if (target.empty()) throw UsageError("a target model is required");
  std::filesystem::path p(target);
  if (p.extension() == ".json" && std::filesystem::is_regular_file(p)) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    Model m = load_model(ss.str(), &catalog, p.stem().string());
    if (auto* tg = std::get_if<TransformationModel>(&m)) catalog.link_orbit_reference(*tg);
    return m;
  }
  try {
    return catalog.space(target);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFound) throw;
  }
  return catalog.transformation(target);
}

const TransformationModel& need_transformation(const Model& m, const std::string& verb) {
  if (const auto* tg = std::get_if<TransformationModel>(&m)) return *tg;
  throw UsageError("'" + verb + "' needs a transformation group target");
}

const SpaceModel& space_of(const Model& m) {
  if (const auto* x = std::get_if<SpaceModel>(&m)) return *x;
  return std::get<TransformationModel>(m).space;
}

int degree(const Options& o) {
  if (!o.n) throw UsageError("'" + o.verb + "' needs --n");
  return *o.n;
}

int degree_bound(const Options& o, const SpaceModel& x) {
  if (o.max_n) return *o.max_n;
  return std::min(4, x.truncation);
}

struct Output {
  ojson result;
  std::string text;
  int code = kOk;
};

Output check_output(const CheckReport& r) {
  Output out;
  ojson summary;
  for (CheckStatus s : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Confirmed, CheckStatus::Vacuous,
                        CheckStatus::Violation, CheckStatus::Indeterminate, CheckStatus::DocumentedException,
                        CheckStatus::NotApplicable})
    summary[to_string(s)] = r.count(s);
  summary["total"] = r.entries.size();
  summary["ok"] = r.ok();
  out.result = ojson{{"summary", summary}, {"checks", to_json(r)}};
  std::ostringstream t;
  for (const auto& e : r.entries) {
    t << to_string(e.status) << "  " << e.id << "  " << (e.model.empty() ? "-" : e.model) << "  n=" << e.n << "  "
      << e.detail << "\n";
    if (is_failure(e.status)) t << "    tests: " << e.reference << " (" << e.rule << ")\n";
  }
  t << r.entries.size() << " checks, " << r.failures() << " failed, " << r.count(CheckStatus::DocumentedException)
    << " documented exceptions, " << r.count(CheckStatus::Indeterminate) << " indeterminate\n";
  out.text = t.str();
  out.code = r.ok() ? kOk : kCheckFailed;
  return out;
}

Output cmd_list(const Catalog& catalog) {
  Output out;
  std::ostringstream t;
  ojson spaces = ojson::array(), groups = ojson::array();
  t << "spaces:\n";
  for (const auto& name : catalog.space_names()) {
    SpaceModel x = catalog.space(name);
    spaces.push_back({{"name", name}, {"truncation", x.truncation}, {"aspherical", x.aspherical},
                      {"pi1", pi1_label(x.pi1)}});
    t << "  " << name << "  pi_1 = " << pi1_label(x.pi1) << ", truncation " << x.truncation << "\n";
  }
  t << "transformation groups:\n";
  for (const auto& name : catalog.transformation_names()) {
    TransformationModel tg = catalog.transformation(name);
    groups.push_back({{"name", name}, {"space", tg.space.name}, {"group", tg.group.label()}, {"free", tg.free}});
    t << "  " << name << "  " << tg.group.label() << " acting on " << tg.space.name << (tg.free ? "" : " (not free)")
      << "\n";
  }
  t << "templates: S<d>, S<d>-antipodal\n";
  out.result = ojson{{"spaces", spaces}, {"transformations", groups}, {"templates", {"S<d>", "S<d>-antipodal"}}};
  out.text = t.str();
  return out;
}

Output cmd_show(const Model& m) {
  Output out;
  nlohmann::json j = std::visit([](const auto& x) { return to_json(x); }, m);
  out.result = ojson::parse(j.dump());
  out.text = j.dump(2) + "\n";
  return out;
}

Output cmd_tau(const SpaceModel& x, int n) {
  Output out;
  TowerSummary t = fox::tau_invariants(x, n);
  out.result = ojson{{"space", x.name}, {"n", n}, {"tau", tower_json(t)}};
  out.text = "tau_" + std::to_string(n) + "(" + x.name + "): " + t.to_string() + "\n";
  return out;
}

Output cmd_sigma(const TransformationModel& tg, int n) {
  Output out;
  rhodes::SigmaSummary s = rhodes::sigma_invariants(tg, n);
  out.result = ojson{{"transformation", tg.name},
                     {"n", n},
                     {"orbit_space", s.orbit_path.base.label},
                     {"sigma", tower_json(s.orbit_path)},
                     {"bookkeeping", {{"order", s.bookkeeping_order.to_string()},
                                      {"free_rank", s.bookkeeping_rank.get_str()}}},
                     {"consistent", s.consistent}};
  std::ostringstream t;
  t << "sigma_" << n << "(" << tg.space.name << ", " << tg.group.label() << "): " << s.orbit_path.to_string() << "\n"
    << "|G| * |tau_" << n << "(X)| = " << s.bookkeeping_order.to_string() << ", rank " << s.bookkeeping_rank.get_str()
    << (s.consistent ? " (consistent)" : " (INCONSISTENT)") << "\n";
  if (n == 1) {
    try {
      CayleyGroup g = rhodes::sigma1_group(tg);
      out.result["sigma1_group"] = table_json(g);
      t << "sigma_1 = " << g.label() << (is_abelian(g) ? ", abelian" : ", non-abelian") << "\n";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unsupported) throw;
      out.result["sigma1_group"] = nullptr;
    }
  }
  out.text = t.str();
  return out;
}

Output cmd_gtau(const SpaceModel& x, int n) {
  Output out;
  fox::GottliebFox gf = fox::gottlieb_fox_invariants(x, n);
  const Verdict g = fox::is_n_gottlieb(x, n), gfv = fox::is_n_gottlieb_fox(x, n);
  out.result = ojson{{"space", x.name},
                     {"n", n},
                     {"gtau", gf.summary ? tower_json(*gf.summary) : ojson(nullptr)},
                     {"missing_degrees", gf.missing},
                     {"n_gottlieb", to_string(g)},
                     {"n_gottlieb_fox", to_string(gfv)}};
  std::ostringstream t;
  t << "G tau_" << n << "(" << x.name << "): ";
  if (gf.summary) {
    t << gf.summary->to_string() << "\n";
  } else {
    t << "unknown (no Gottlieb data in degree";
    for (int d : gf.missing) t << " " << d;
    t << ")\n";
  }
  t << n << "-Gottlieb: " << to_string(g) << ", " << n << "-Gottlieb-Fox: " << to_string(gfv) << "\n";
  out.text = t.str();
  return out;
}

Output cmd_gsigma(const TransformationModel& tg, int n) {
  Output out;
  rhodes::GottliebRhodes gr = rhodes::gottlieb_rhodes_invariants(tg, n);
  out.result = ojson{{"transformation", tg.name},
                     {"n", n},
                     {"gsigma", gr.summary ? tower_json(*gr.summary) : ojson(nullptr)},
                     {"g0_order", gr.g0_order.to_string()}};
  if (!gr.summary) out.result["indeterminate_reason"] = gr.indeterminate_reason;
  std::ostringstream t;
  t << "G sigma_" << n << "(" << tg.space.name << ", " << tg.group.label() << "): "
    << (gr.summary ? gr.summary->to_string() : "indeterminate: " + gr.indeterminate_reason) << "\n";
  if (gr.realized) {
    out.result["group"] = gr.realized->label();
    out.result["abelian"] = is_abelian(*gr.realized);
    out.result["realized"] = table_json(*gr.realized);
    out.result["order_agrees"] = gr.order_agrees;
    t << "realized as " << gr.realized->label() << " of order " << gr.realized->order()
      << (is_abelian(*gr.realized) ? ", abelian" : ", non-abelian") << "\n";
  } else {
    out.result["realized"] = nullptr;
  }
  out.text = t.str();
  return out;
}

ojson g0_json(const rhodes::G0Result& g0, const CayleyGroup& g) {
  ojson entries = ojson::array();
  for (const auto& e : g0.entries)
    entries.push_back({{"element", e.element}, {"verdict", to_string(e.verdict)}, {"rule", e.rule}});
  std::vector<std::string> names;
  for (int x : g0.subgroup.elements) names.push_back(g.name(x));
  return ojson{{"subgroup", names}, {"equals_group", to_string(g0.equals_group())}, {"entries", entries}};
}

Output cmd_g0(const TransformationModel& tg) {
  Output out;
  rhodes::G0Result g0 = rhodes::compute_g0(tg);
  out.result = ojson{{"transformation", tg.name}, {"g0", g0_json(g0, tg.group)}};
  std::ostringstream t;
  for (const auto& e : g0.entries) t << "  " << e.element << ": " << to_string(e.verdict) << " (" << e.rule << ")\n";
  t << "G_0 = " << names_of(tg.group, g0.subgroup) << (g0.determined() ? "" : " so far; some elements undetermined")
    << ", G_0 = G: " << to_string(g0.equals_group()) << "\n";
  out.text = t.str();
  return out;
}

Output cmd_classify(const Model& m, int max_n) {
  Output out;
  std::ostringstream t;
  if (const auto* x = std::get_if<SpaceModel>(&m)) {
    ojson degrees = ojson::array();
    Verdict g = Verdict::True, gf = Verdict::True;
    for (int n = 1; n <= max_n; ++n) {
      Verdict a = fox::is_n_gottlieb(*x, n), b = fox::is_n_gottlieb_fox(*x, n);
      g = verdict_and(g, a);
      gf = verdict_and(gf, b);
      degrees.push_back({{"n", n}, {"gottlieb", to_string(a)}, {"gottlieb_fox", to_string(b)}});
      t << "n=" << n << "  Gottlieb " << to_string(a) << "  Gottlieb-Fox " << to_string(b) << "\n";
    }
    out.result = ojson{{"space", x->name}, {"max_n", max_n}, {"degrees", degrees},
                       {"gottlieb", to_string(g)}, {"gottlieb_fox", to_string(gf)}};
    t << "through " << max_n << ": Gottlieb " << to_string(g) << ", Gottlieb-Fox " << to_string(gf) << "\n";
    out.text = t.str();
    return out;
  }
  const auto& tg = std::get<TransformationModel>(m);
  rhodes::ClassificationReport c = rhodes::classify(tg, max_n);
  ojson degrees = ojson::array();
  for (const auto& d : c.degrees) {
    degrees.push_back({{"n", d.n},
                       {"gottlieb", to_string(d.gottlieb)},
                       {"gottlieb_fox", to_string(d.gottlieb_fox)},
                       {"gottlieb_rhodes", to_string(d.gottlieb_rhodes)},
                       {"equivariant", to_string(d.equivariant)},
                       {"equivariant_rule", d.equivariant_rule}});
    t << "n=" << d.n << "  Gottlieb " << to_string(d.gottlieb) << "  Gottlieb-Fox " << to_string(d.gottlieb_fox)
      << "  Gottlieb-Rhodes " << to_string(d.gottlieb_rhodes) << "  equivariant " << to_string(d.equivariant) << " ("
      << d.equivariant_rule << ")\n";
  }
  out.result = ojson{{"transformation", tg.name},
                     {"max_n", max_n},
                     {"g0", g0_json(c.g0, tg.group)},
                     {"degrees", degrees},
                     {"gottlieb", to_string(c.gottlieb)},
                     {"gottlieb_fox", to_string(c.gottlieb_fox)},
                     {"gottlieb_rhodes", to_string(c.gottlieb_rhodes)},
                     {"equivariant", to_string(c.equivariant)},
                     {"orbit_gottlieb", to_string(c.orbit_gottlieb)}};
  t << "G_0 = " << names_of(tg.group, c.g0.subgroup) << "\n"
    << "through " << max_n << ": Gottlieb " << to_string(c.gottlieb) << ", Gottlieb-Fox " << to_string(c.gottlieb_fox)
    << ", Gottlieb-Rhodes " << to_string(c.gottlieb_rhodes) << ", equivariant " << to_string(c.equivariant)
    << ", X/G Gottlieb " << to_string(c.orbit_gottlieb) << "\n";
  out.text = t.str();
  return out;
}

CheckReport audit_report(const TransformationModel& tg, int max_n) {
  CheckReport r = rhodes::orbit_gottlieb_audit(tg, max_n);
  try {
    r.append(rhodes::aspherical_orbit_check(tg, max_n));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotApplicable) throw;
  }
  try {
    r.append(rhodes::odd_sphere_center_check(tg));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotApplicable) throw;
  }
  return r;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotFound:
    case ErrorKind::ParseError:
    case ErrorKind::SchemaViolation:
    case ErrorKind::InvariantViolation:
      return kUsageError;
    default:
      return kComputationError;
  }
}

Output dispatch(const Options& o) {
  Catalog catalog = load_catalog(o);
  if (o.n && *o.n < 1) throw UsageError("--n must be >= 1");
  if (o.max_n && *o.max_n < 1) throw UsageError("--max-n must be >= 1");
  if (o.verb == "list") return cmd_list(catalog);
  if (o.verb == "verify") {
    const int max_n = o.max_n.value_or(4);
    if (o.all) {
      if (!o.target.empty()) throw UsageError("give either a target or --all");
      return check_output(verify_catalog(catalog, max_n));
    }
    Model m = resolve(o.target, catalog);
    if (const auto* x = std::get_if<SpaceModel>(&m)) return check_output(verify_space(*x, max_n));
    return check_output(verify_transformation(std::get<TransformationModel>(m), max_n));
  }
  Model m = resolve(o.target, catalog);
  if (o.verb == "show") return cmd_show(m);
  if (o.verb == "tau") return cmd_tau(space_of(m), degree(o));
  if (o.verb == "gtau") return cmd_gtau(space_of(m), degree(o));
  if (o.verb == "sigma") return cmd_sigma(need_transformation(m, o.verb), degree(o));
  if (o.verb == "gsigma") return cmd_gsigma(need_transformation(m, o.verb), degree(o));
  if (o.verb == "g0") return cmd_g0(need_transformation(m, o.verb));
  if (o.verb == "classify") return cmd_classify(m, degree_bound(o, space_of(m)));
  if (o.verb == "audit") {
    const auto& tg = need_transformation(m, o.verb);
    return check_output(audit_report(tg, degree_bound(o, tg.space)));
  }
  throw UsageError("unknown command '" + o.verb + "'");
}

ojson command_echo(const Options& o) {
  ojson c{{"verb", o.verb}};
  c["target"] = o.all ? ojson("--all") : (o.target.empty() ? ojson(nullptr) : ojson(o.target));
  if (o.n) c["n"] = *o.n;
  if (o.max_n) c["max_n"] = *o.max_n;
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Torus homotopy groups, Rhodes groups and their Gottlieb subgroups", "thg"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"list", "list catalog models"},
      {"show", "print a model as JSON"},
      {"tau", "torus homotopy group invariants tau_n"},
      {"sigma", "Rhodes group invariants sigma_n"},
      {"gtau", "Gottlieb-Fox group invariants"},
      {"gsigma", "Gottlieb-Rhodes group invariants"},
      {"g0", "elements of G homotopic to the identity"},
      {"classify", "Gottlieb, Gottlieb-Fox, Gottlieb-Rhodes and equivariant verdicts"},
      {"verify", "run every check on a model or on the whole catalog"},
      {"audit", "implications between equivariant and orbit-space Gottlieb properties"},
  };
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (name != "list") sub->add_option("target", o.target, "catalog model name or model file");
    if (name == "tau" || name == "sigma" || name == "gtau" || name == "gsigma") sub->add_option("--n", o.n, "degree");
    if (name == "classify" || name == "verify" || name == "audit")
      sub->add_option("--max-n", o.max_n, "largest degree (default min(4, truncation))");
    if (name == "verify") sub->add_flag("--all", o.all, "verify the whole catalog");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--catalog-dir", o.catalog_dir, "directory of model files (default $THG_CATALOG_DIR or built-in)");
    sub->callback([&o, name = name] { o.verb = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    Output result = dispatch(o);
    if (o.format == "json") {
      ojson doc{{"command", command_echo(o)}, {"result", result.result}};
      if (result.result.contains("summary")) doc["ok"] = result.code == kOk;
      out << doc.dump(2) << "\n";
    } else {
      out << result.text;
    }
    return result.code;
  } catch (const UsageError& e) {
    err << "thg: usage: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "thg: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "thg: parse-error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "thg: internal: " << e.what() << "\n";
    return kComputationError;
  }
}

}  // namespace thg::cli
