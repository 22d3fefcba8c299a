// boolsynth: command-line front end.
//
// Exit codes: 0 success, 1 property fails, 2 usage error, 3 invalid input,
// 4 budget exceeded.

#include <boolsynth/classify.hpp>
#include <boolsynth/hardness.hpp>
#include <boolsynth/net.hpp>
#include <boolsynth/region.hpp>
#include <boolsynth/synthesis.hpp>
#include <boolsynth/ts.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace boolsynth;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFails = 1, kUsage = 2, kBadInput = 3, kBudget = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

NetType type_arg(const std::string& s) {
  try {
    return parse_type(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --type: ") + e.what());
  }
}

json atom_json(const TransitionSystem& a, const Atom& atom) {
  json j;
  if (atom.kind == AtomKind::SSP) {
    j["kind"] = "ssp";
    j["states"] = {a.state_name(atom.a), a.state_name(atom.b)};
  } else {
    j["kind"] = "essp";
    j["event"] = a.event_name(atom.a);
    j["state"] = a.state_name(atom.b);
  }
  return j;
}

json net_json(const BooleanNet& n) {
  json places = json::array();
  for (int p = 0; p < n.num_places(); ++p) {
    json flow = json::object();
    for (int t = 0; t < n.num_transitions(); ++t)
      if (n.f(p, t) != Interaction::nop) flow[n.transitions[t]] = std::string(to_string(n.f(p, t)));
    places.push_back({{"name", n.places[p]}, {"initial", int(n.initial[p])}, {"flow", flow}});
  }
  return {{"name", n.name}, {"transitions", n.transitions}, {"places", places}};
}

json ts_summary(const TransitionSystem& a) {
  return {{"name", a.name()}, {"states", a.num_states()}, {"events", a.num_events()}, {"arcs", a.arcs().size()}};
}

void print_json(json j) {
  json out{{"schema", "v1"}};
  for (auto& [k, v] : j.items()) out[k] = v;
  std::cout << out.dump(2) << "\n";
}

struct SolverFlags {
  std::string strategy = "auto";
  std::uint64_t budget_nodes = 10'000'000;
  double budget_secs = 600.0;
  int jobs = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--strategy", strategy, "auto|oracle")->check(CLI::IsMember({"auto", "oracle"}));
    cmd->add_option("--budget-nodes", budget_nodes, "oracle node cap");
    cmd->add_option("--budget-secs", budget_secs, "oracle time cap in seconds");
    cmd->add_option("--jobs", jobs, "worker threads for atom solving")->check(CLI::PositiveNumber);
  }
  FeasibilityOptions options() const {
    FeasibilityOptions o;
    o.strategy = strategy == "oracle" ? Strategy::Oracle : Strategy::Auto;
    o.budget = {budget_nodes, budget_secs};
    o.jobs = jobs;
    return o;
  }
};

// ------------------------------------------------------------ commands

int cmd_validate(const std::string& path, bool as_json) {
  const std::string text = read_file(path);
  // first keyword decides the format
  std::istringstream in(text);
  std::string first;
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    if (ls >> first) break;
  }
  json j{{"command", "validate"}, {"file", path}};
  auto report = [&](bool ok, const std::string& kind, json extra, const std::vector<std::string>& problems) {
    j["kind"] = kind;
    j["valid"] = ok;
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["problems"] = problems;
    if (as_json)
      print_json(j);
    else {
      std::cout << kind << ": " << (ok ? "valid" : "invalid") << "\n";
      for (auto& [k, v] : extra.items()) std::cout << "  " << k << ": " << v.dump() << "\n";
      for (auto& p : problems) std::cout << "  " << p << "\n";
    }
    return ok ? kOk : kBadInput;
  };
  if (first == "net") {
    auto n = parse_net(text);
    return report(true, "net", {{"places", n.num_places()}, {"transitions", n.num_transitions()}}, {});
  }
  if (first == "cnf") {
    auto raw = parse_raw_cnf(text);
    try {
      auto phi = validate_cnf(raw);
      return report(true, "cnf", {{"variables", phi.variables.size()}, {"clauses", phi.num_clauses()}}, {});
    } catch (const CnfError& e) {
      return report(false, "cnf", json::object(), {e.what()});
    }
  }
  if (text.find("\n---") != std::string::npos || text.rfind("---", 0) == 0) {
    auto u = parse_union(text);
    return report(true, "union", {{"components", u.components.size()}}, {});
  }
  auto v = validate_ts(parse_raw_ts(text));
  std::vector<std::string> problems;
  for (auto& x : v.violations) problems.push_back(x.describe());
  json extra = json::object();
  if (v.ts) {
    auto m = modesty(*v.ts);
    extra = ts_summary(*v.ts);
    extra["simple"] = m.simple;
    extra["loop_free"] = m.loop_free;
    extra["reduced"] = m.reduced;
    extra["modest"] = m.modest;
  }
  return report(v.violations.empty(), "ts", extra, problems);
}

int cmd_classify(const std::vector<std::string>& types, bool all, bool as_json) {
  std::vector<NetType> list;
  if (all)
    for (int b = 0; b < 256; ++b) list.push_back(NetType(static_cast<std::uint8_t>(b)));
  for (auto& t : types) list.push_back(type_arg(t));
  if (list.empty()) throw UsageError("classify needs --type or --all");
  json rows = json::array();
  for (auto t : list) {
    auto c = classify_type(t);
    if (as_json)
      rows.push_back({{"type", format_type(t)}, {"class", to_string(c.kind)}, {"text", describe(c)}});
    else
      std::cout << (list.size() > 1 ? "{" + format_type(t) + "} " : "") << describe(c) << "\n";
  }
  if (as_json) print_json({{"command", "classify"}, {"results", rows}});
  return kOk;
}

int cmd_check(const std::string& path, const std::string& type, const std::string& property,
              const SolverFlags& flags, bool as_json) {
  auto a = parse_ts(read_file(path));
  NetType tau = type_arg(type);
  auto opts = flags.options();
  opts.ssp_only = property == "ssp";
  opts.essp_only = property == "essp";
  auto rep = decide_feasibility(a, tau, opts);
  const bool holds = !rep.out_of_scope && rep.unsolved.empty() && rep.exceeded.empty();
  const int code = rep.out_of_scope ? kUsage : !rep.unsolved.empty() ? kFails : !rep.exceeded.empty() ? kBudget : kOk;
  if (as_json) {
    json un = json::array(), ex = json::array();
    for (auto& x : rep.unsolved) un.push_back(atom_json(a, x));
    for (auto& x : rep.exceeded) ex.push_back(atom_json(a, x));
    print_json({{"command", "check"},
                {"type", format_type(tau)},
                {"property", property},
                {"ts", ts_summary(a)},
                {"out_of_scope", rep.out_of_scope},
                {"holds", holds},
                {"atoms", rep.atoms.size()},
                {"unsolved", un},
                {"budget_exceeded", ex}});
  } else if (rep.out_of_scope) {
    std::cout << "out of scope: type {" << format_type(tau) << "} lacks nop\n";
  } else {
    std::cout << property << " for {" << format_type(tau) << "}: " << (holds ? "holds" : code == kBudget ? "undecided" : "fails")
              << " (" << rep.atoms.size() << " atoms)\n";
    for (auto& x : rep.unsolved) std::cout << "  unsolvable " << describe_atom(a, x) << "\n";
    for (auto& x : rep.exceeded) std::cout << "  budget exceeded " << describe_atom(a, x) << "\n";
  }
  return code;
}

int cmd_synth(const std::string& path, const std::string& type, const std::string& out, bool verify,
              const SolverFlags& flags, bool as_json) {
  auto a = parse_ts(read_file(path));
  NetType tau = type_arg(type);
  auto res = synthesize(a, tau, flags.options(), verify);
  int code = kOk;
  switch (res.status) {
    case SynthesisStatus::Synthesized: code = verify && !res.verified ? kFails : kOk; break;
    case SynthesisStatus::Infeasible: code = kFails; break;
    case SynthesisStatus::OutOfScope: code = kUsage; break;
    case SynthesisStatus::BudgetExceeded: code = kBudget; break;
  }
  const char* status[] = {"synthesized", "infeasible", "out-of-scope", "budget-exceeded"};
  if (res.status == SynthesisStatus::Synthesized && (!out.empty() || !as_json)) emit(out, serialize_net(res.net));
  if (as_json) {
    json j{{"command", "synth"}, {"type", format_type(tau)}, {"ts", ts_summary(a)},
           {"status", status[static_cast<int>(res.status)]}};
    if (res.status == SynthesisStatus::Synthesized) {
      j["net"] = net_json(res.net);
      if (verify) j["verified"] = res.verified;
    }
    json un = json::array();
    for (auto& x : res.report.unsolved) un.push_back(atom_json(a, x));
    j["unsolved"] = un;
    print_json(j);
  } else if (res.status != SynthesisStatus::Synthesized) {
    std::cerr << status[static_cast<int>(res.status)] << "\n";
    for (auto& x : res.report.unsolved) std::cerr << "  unsolvable " << describe_atom(a, x) << "\n";
  } else if (verify) {
    std::cerr << (res.verified ? "verified: state graph isomorphic" : "verification failed") << "\n";
  }
  return code;
}

int cmd_stategraph(const std::string& path, const std::string& out, std::size_t cap, bool as_json) {
  auto n = parse_net(read_file(path));
  TransitionSystem g;
  try {
    g = state_graph(n, cap);
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kBudget;
  }
  if (as_json) {
    if (!out.empty()) emit(out, serialize_ts(g));
    print_json({{"command", "stategraph"}, {"ts", ts_summary(g)}});
  } else {
    emit(out, serialize_ts(g));
  }
  return kOk;
}

int cmd_iso(const std::string& p1, const std::string& p2, bool as_json) {
  auto read_any = [](const std::string& p) {
    std::string text = read_file(p);
    std::istringstream in(text);
    std::string w;
    for (std::string line; std::getline(in, line);) {
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      std::istringstream ls(line);
      if (ls >> w) break;
    }
    return w == "net" ? state_graph(parse_net(text)) : parse_ts(text);
  };
  auto a = read_any(p1), b = read_any(p2);
  auto map = check_isomorphic(a, b);
  if (as_json) {
    json j{{"command", "iso"}, {"isomorphic", map.has_value()}};
    if (map) {
      json m = json::object();
      for (int s = 0; s < a.num_states(); ++s) m[a.state_name(s)] = b.state_name((*map)[s]);
      j["mapping"] = m;
    }
    print_json(j);
  } else {
    std::cout << (map ? "isomorphic" : "not isomorphic") << "\n";
    if (map)
      for (int s = 0; s < a.num_states(); ++s) std::cout << "  " << a.state_name(s) << " -> " << b.state_name((*map)[s]) << "\n";
  }
  return map ? kOk : kFails;
}

int cmd_reduce(const std::string& cnf_path, const std::string& scheme, const std::string& type,
               const std::string& out, const std::string& witness, const std::string& model, bool as_json) {
  auto phi = parse_cnf(read_file(cnf_path));
  if (!witness.empty() && model != "auto") throw UsageError("--witness needs --model auto");
  std::optional<Model> m;
  if (model == "auto") m = one_in_three_bruteforce(phi);

  TransitionSystem ts;
  std::string key_state;
  std::optional<Region> region;
  NetType tau;
  if (scheme.rfind("t2:", 0) == 0) {
    tau = type_arg(scheme.substr(3));
    if (!type.empty() && type_arg(type) != tau) throw UsageError("--type disagrees with the t2 scheme");
    if (!theorem2_class(tau)) throw UsageError("type {" + format_type(tau) + "} has no direct construction");
    auto t2 = build_theorem2_ts(phi, tau);
    if (m && !witness.empty()) region = theorem2_witness(phi, t2, *m);
    key_state = t2.key_state;
    ts = std::move(t2.ts);
  } else {
    auto sigma = parse_sigma(scheme);
    if (!sigma) throw UsageError("unknown scheme '" + scheme + "'");
    std::optional<NetType> t;
    if (!type.empty()) t = type_arg(type);
    if (t && !manages(*sigma, *t))
      throw UsageError("type {" + format_type(*t) + "} is not handled by " + scheme);
    auto red = build_reduction(phi, *sigma, t);
    if (m && !witness.empty()) region = combine_witness(phi, red, *m);
    tau = red.tau;
    key_state = red.key_state;
    ts = std::move(red.joined);
  }
  if (!out.empty() || !as_json) emit(out, serialize_ts(ts));
  if (region) emit(witness, serialize_region(ts, *region));
  if (as_json) {
    json j{{"command", "reduce"}, {"scheme", scheme}, {"type", format_type(tau)}, {"ts", ts_summary(ts)},
           {"key_event", "k"}, {"key_state", key_state}};
    if (model == "auto") j["model"] = m ? json(model_names(phi, *m)) : json(nullptr);
    print_json(j);
  } else if (model == "auto" && !m) {
    std::cerr << "no one-in-three model\n";
  }
  return model == "auto" && !m ? kFails : kOk;
}

int cmd_t2gen(const std::string& cnf_path, const std::string& variant, const std::string& out, bool as_json) {
  auto phi = parse_cnf(read_file(cnf_path));
  T2Variant v = variant == "plus" ? T2Variant::Plus : variant == "cross" ? T2Variant::Cross : T2Variant::Basic;
  auto t2 = build_theorem2_variant(phi, v);
  if (!out.empty() || !as_json) emit(out, serialize_ts(t2.ts));
  if (as_json) print_json({{"command", "t2gen"}, {"variant", variant}, {"ts", ts_summary(t2.ts)}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean net synthesis toolkit"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  std::string file, file2, type, out, property = "both", scheme, witness, model, variant = "basic";
  std::vector<std::string> types;
  bool all = false, verify = false;
  std::size_t cap = 1u << 20;
  SolverFlags flags;

  auto* validate = app.add_subcommand("validate", "check a ts, union, net or cnf file");
  validate->add_option("file", file)->required();

  auto* classify = app.add_subcommand("classify", "complexity of net types");
  classify->add_option("--type", types, "comma-separated interaction list");
  classify->add_flag("--all", all, "all 256 types");

  auto* synth = app.add_subcommand("synth", "synthesize a net from a ts");
  synth->add_option("file", file)->required();
  synth->add_option("--type", type)->required();
  synth->add_option("-o,--output", out);
  synth->add_flag("--verify", verify, "check the state graph against the input");
  flags.attach(synth);

  auto* check = app.add_subcommand("check", "decide ssp/essp");
  check->add_option("file", file)->required();
  check->add_option("--type", type)->required();
  check->add_option("--property", property)->check(CLI::IsMember({"ssp", "essp", "both"}));
  flags.attach(check);

  auto* sg = app.add_subcommand("stategraph", "reachability graph of a net");
  sg->add_option("file", file)->required();
  sg->add_option("-o,--output", out);
  sg->add_option("--cap", cap, "marking cap");

  auto* iso = app.add_subcommand("iso", "isomorphism of two ts (or net state graphs)");
  iso->add_option("first", file)->required();
  iso->add_option("second", file2)->required();

  auto* reduce = app.add_subcommand("reduce", "hardness instance from a cnf");
  reduce->add_option("file", file)->required();
  reduce->add_option("--scheme", scheme, "sigma1..sigma6 or t2:<type>")->required();
  reduce->add_option("--type", type);
  reduce->add_option("-o,--output", out);
  reduce->add_option("--witness", witness, "write the key region here");
  reduce->add_option("--model", model, "auto")->check(CLI::IsMember({"auto"}));

  auto* t2gen = app.add_subcommand("t2gen", "basic, plus or cross ts for a cnf");
  t2gen->add_option("file", file)->required();
  t2gen->add_option("--variant", variant)->check(CLI::IsMember({"basic", "plus", "cross"}));
  t2gen->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  const bool as_json = format == "json";
  try {
    if (*validate) return cmd_validate(file, as_json);
    if (*classify) return cmd_classify(types, all, as_json);
    if (*synth) return cmd_synth(file, type, out, verify, flags, as_json);
    if (*check) return cmd_check(file, type, property, flags, as_json);
    if (*sg) return cmd_stategraph(file, out, cap, as_json);
    if (*iso) return cmd_iso(file, file2, as_json);
    if (*reduce) return cmd_reduce(file, scheme, type, out, witness, model, as_json);
    if (*t2gen) return cmd_t2gen(file, variant, out, as_json);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const WrongFamily& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const TsError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const CnfError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kUsage;
}
