// desattack: opacity checking and sensor-deception attack synthesis for
// supervised discrete-event systems.
//
// Exit codes: 0 ok, 1 error, 2 not attackable, 3 not opaque.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "desattack/desattack.hpp"

namespace da = desattack;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNotAttackable = 2;
constexpr int kNotOpaque = 3;

struct Inputs {
  std::string plant, supervisor, secret;
};

void add_model_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("-p,--plant", in.plant, "plant model (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("-s,--supervisor", in.supervisor, "supervisor realization (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--secret", in.secret, "secret initial states, e.g. \"1,2\" (default: from the plant)");
}

da::StateSet secret_of(const da::Plant& g, const std::string& text) {
  if (text.empty()) return g.secret_initial();
  da::StateSet out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    auto x = g.find_state(token);
    if (!x) throw da::InputError("--secret: unknown state '" + token + "'");
    out.insert(*x);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '{' || c == '}') flush();
    else token += c;
  }
  flush();
  return out;
}

struct Loaded {
  da::Plant plant;
  da::SupervisorAutomaton sup;
  da::StateSet secret;
};

Loaded load(const Inputs& in) {
  da::Plant g = da::load_plant(in.plant);
  da::SupervisorAutomaton h = da::load_supervisor(in.supervisor);
  if (!g.alphabet().compatible_with(h.alphabet()))
    throw da::InputError("plant and supervisor declare different events or event flags");
  da::StateSet secret = secret_of(g, in.secret);
  da::check_secret(g, secret);
  return {std::move(g), std::move(h), std::move(secret)};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw da::InputError(path + ": cannot write file");
  out << text;
}

std::string graph_text(const da::AasGraph& g, const std::string& kind, bool dot,
                       const std::map<std::size_t, da::AttackAction>* choice = nullptr) {
  if (dot) return da::to_dot(g, kind);
  return da::graph_to_json(g, kind, choice).dump(2) + "\n";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string count(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

// --- subcommands -----------------------------------------------------------

int cmd_validate(const std::string& model, const std::string& supervisor) {
  bool clean = true;
  auto report = [&](const std::string& path, da::ModelRole role) -> std::optional<da::ModelDocument> {
    da::ModelDocument doc = da::read_model_document(path);
    auto problems = da::validate_document(doc, role);
    for (const auto& p : problems) std::cout << path << ": " << p << "\n";
    if (!problems.empty()) {
      clean = false;
      return std::nullopt;
    }
    return doc;
  };
  da::ModelDocument first = da::read_model_document(model);
  da::ModelRole role = supervisor.empty() ? da::infer_role(first) : da::ModelRole::Plant;
  auto doc = report(model, role);
  if (doc) {
    da::Automaton a = da::automaton_of(*doc);
    std::cout << model << ": " << (role == da::ModelRole::Plant ? "plant" : "supervisor") << " with "
              << count(a.num_states(), "state") << ", " << count(a.alphabet().size(), "event") << ", "
              << count(a.num_transitions(), "transition") << "\n";
  }
  if (!supervisor.empty()) {
    auto sdoc = report(supervisor, da::ModelRole::Supervisor);
    if (sdoc) {
      da::Automaton h = da::automaton_of(*sdoc);
      std::cout << supervisor << ": supervisor with " << count(h.num_states(), "state") << "\n";
      if (doc && !da::automaton_of(*doc).alphabet().compatible_with(h.alphabet())) {
        std::cout << supervisor << ": events or event flags differ from " << model << "\n";
        clean = false;
      }
    }
  }
  std::cout << (clean ? "ok" : "invalid") << "\n";
  return clean ? kOk : kError;
}

int cmd_estimate(const Inputs& in, const std::string& obs) {
  Loaded m = load(in);
  da::Observation alpha = da::parse_trace(m.plant.alphabet(), obs);
  std::cout << "observation: " << da::format_trace(m.plant.alphabet(), alpha) << "\n";
  std::cout << "current: " << da::format_states(m.plant, da::current_state_estimate(m.plant, m.sup, alpha)) << "\n";
  std::cout << "initial: " << da::format_states(m.plant, da::initial_state_estimate(m.plant, m.sup, alpha)) << "\n";
  return kOk;
}

int cmd_check_opacity(const Inputs& in) {
  Loaded m = load(in);
  da::OpacityVerdict v = da::check_initial_state_opacity(m.plant, m.sup, m.secret);
  std::cout << "secret: " << da::format_states(m.plant, m.secret) << "\n";
  if (v.opaque) {
    std::cout << "opaque\n";
    return kOk;
  }
  std::cout << "not opaque\n";
  std::cout << "witness: " << da::format_trace(m.plant.alphabet(), *v.witness) << "\n";
  std::cout << "initial estimate: " << da::format_states(m.plant, v.witness_estimate) << "\n";
  return kNotOpaque;
}

int cmd_build(const Inputs& in, bool simplified, bool dot, const std::string& out) {
  Loaded m = load(in);
  auto ctx = da::make_context(m.plant, m.sup);
  da::AasGraph aas = da::build_aas(ctx);
  if (!simplified) {
    emit(graph_text(aas, "aas", dot), out);
  } else {
    emit(graph_text(da::simplify(aas, m.secret), "saas", dot), out);
  }
  return kOk;
}

int cmd_synthesize(const Inputs& in, bool dot, const std::string& out) {
  Loaded m = load(in);
  auto ctx = da::make_context(m.plant, m.sup);
  da::AasGraph saas = da::simplify(da::build_aas(ctx), m.secret);
  auto sas = da::extract_sas(saas, m.secret);
  if (!sas) {
    std::cerr << "not attackable\n";
    return kNotAttackable;
  }
  emit(graph_text(sas->graph, "sas", dot, &sas->choice), out);
  return kOk;
}

int cmd_simulate(const Inputs& in, const std::string& sas_path, const std::string& run_text) {
  Loaded m = load(in);
  const da::Alphabet& sigma = m.plant.alphabet();
  auto ctx = da::make_context(m.plant, m.sup);
  std::optional<da::Sas> sas;
  if (sas_path.empty()) {
    sas = da::extract_sas(da::simplify(da::build_aas(ctx), m.secret), m.secret);
    if (!sas) {
      std::cerr << "not attackable\n";
      return kNotAttackable;
    }
  } else {
    sas = da::sas_from_json(da::read_json(sas_path), ctx);
  }
  da::InducedStrategy strategy = da::induced_strategy(*sas);
  da::Observation run = da::parse_trace(sigma, run_text);
  for (da::EventId e : run)
    if (!sigma.observable(e)) throw da::InputError("--run: event '" + sigma.name(e) + "' is unobservable");

  da::InducedStrategy::Cursor cursor(strategy);
  std::size_t stealthy_steps = 0;
  bool still_stealthy = true;
  da::AttackEstimates last;
  for (std::size_t k = 0; k < run.size(); ++k) {
    da::Observation prefix(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(k + 1));
    da::AttackAction a = cursor.advance(run[k]);
    last = da::attack_estimates(m.plant, ctx->aug, m.sup, strategy, prefix);
    if (last.attacker_current.empty())
      throw da::InputError("--run: '" + da::format_trace(sigma, prefix) +
                           "' cannot be observed in the attacked closed loop");
    std::cout << "step " << k + 1 << ": actual " << sigma.name(run[k]) << " | action " << da::format_action(sigma, a)
              << " | doctored " << da::format_trace(sigma, last.doctored) << " | supervisor estimate "
              << da::format_states(m.plant, last.supervisor_current) << " | attacker current "
              << da::format_states(m.plant, last.attacker_current) << " | attacker initial "
              << da::format_states(m.plant, last.attacker_initial) << " | stealthy " << yes_no(last.stealthy) << "\n";
    still_stealthy = still_stealthy && last.stealthy;
    if (still_stealthy) stealthy_steps = k + 1;
  }
  // Detection asks for stealth along the run without its last event.
  std::size_t alpha_len = run.empty() ? 0 : run.size() - 1;
  da::Observation stealthy_prefix(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(std::min(stealthy_steps, alpha_len)));
  bool stealthy_alpha = stealthy_steps >= alpha_len;
  const da::StateSet& init = run.empty() ? m.plant.initial() : last.attacker_initial;
  bool inside = !init.empty() && std::includes(m.secret.begin(), m.secret.end(), init.begin(), init.end());
  std::cout << "stealthy prefix: " << da::format_trace(sigma, stealthy_prefix) << "\n";
  std::cout << "attacker initial estimate: " << da::format_states(m.plant, init) << "\n";
  std::cout << "secret: " << da::format_states(m.plant, m.secret) << "\n";
  std::cout << "verdict: " << (!run.empty() && stealthy_alpha && inside ? "secret detected" : "secret not detected")
            << "\n";
  return kOk;
}

int cmd_oracle(const Inputs& in, std::optional<std::size_t> horizon, std::size_t max_nodes) {
  Loaded m = load(in);
  auto ctx = da::make_context(m.plant, m.sup);
  da::AasGraph saas = da::simplify(da::build_aas(ctx), m.secret);
  std::size_t h = horizon.value_or(saas.num_environment());
  bool synthesized = da::is_attackable(saas, m.secret);
  auto witness = da::oracle::exists_attacker(m.plant, m.sup, m.secret, h, {max_nodes});
  std::cout << "horizon: " << h << "\n";
  std::cout << "saas environment states: " << saas.num_environment() << "\n";
  std::cout << "is_attackable: " << yes_no(synthesized) << "\n";
  std::cout << "exists_attacker: " << yes_no(witness.has_value()) << "\n";
  if (witness) std::cout << "oracle witness: " << da::format_trace(m.plant.alphabet(), witness->observation) << "\n";
  bool agree = synthesized == witness.has_value();
  std::cout << "agreement: " << yes_no(agree) << "\n";
  return agree ? kOk : kError;
}

int cmd_export_dot(const Inputs& in, const std::string& what, const std::string& sas_path, const std::string& out) {
  if (what == "plant") {
    emit(da::to_dot(da::load_plant(in.plant), "G"), out);
    return kOk;
  }
  if (in.supervisor.empty()) throw da::InputError("--graph " + what + " needs --supervisor");
  if (what == "supervisor") {
    emit(da::to_dot(da::load_supervisor(in.supervisor).automaton(), "H"), out);
    return kOk;
  }
  Loaded m = load(in);
  if (what == "closed-loop") {
    emit(da::to_dot(da::closed_loop(m.plant, m.sup), "S/G"), out);
    return kOk;
  }
  auto ctx = da::make_context(m.plant, m.sup);
  if (what == "sas" && !sas_path.empty()) {
    emit(da::to_dot(da::sas_from_json(da::read_json(sas_path), ctx).graph, "sas"), out);
    return kOk;
  }
  da::AasGraph aas = da::build_aas(ctx);
  if (what == "aas") {
    emit(da::to_dot(aas, "aas"), out);
    return kOk;
  }
  da::AasGraph saas = da::simplify(aas, m.secret);
  if (what == "saas") {
    emit(da::to_dot(saas, "saas"), out);
    return kOk;
  }
  auto sas = da::extract_sas(saas, m.secret);
  if (!sas) {
    std::cerr << "not attackable\n";
    return kNotAttackable;
  }
  emit(da::to_dot(sas->graph, "sas"), out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Initial-state opacity and sensor-deception attack synthesis for supervised DES"};
  app.require_subcommand(1);

  std::string model, other_sup;
  auto* validate = app.add_subcommand("validate", "check a model document (and optionally a supervisor)");
  validate->add_option("model", model, "plant or supervisor document")->required()->check(CLI::ExistingFile);
  validate->add_option("-s,--supervisor", other_sup, "supervisor document")->check(CLI::ExistingFile);

  Inputs est_in;
  std::string obs;
  auto* estimate = app.add_subcommand("estimate", "current and initial state estimates of an observation");
  add_model_options(estimate, est_in);
  estimate->add_option("--obs", obs, "observation, e.g. \"b c\"")->required();

  Inputs op_in;
  auto* opacity = app.add_subcommand("check-opacity", "verify initial-state opacity of the closed loop");
  add_model_options(opacity, op_in);

  Inputs aas_in, saas_in, syn_in;
  bool aas_dot = false, saas_dot = false, syn_dot = false;
  std::string aas_out, saas_out, syn_out;
  auto* build = app.add_subcommand("build-aas", "construct the all attack structure");
  add_model_options(build, aas_in);
  build->add_flag("--dot", aas_dot, "emit Graphviz instead of JSON");
  build->add_option("-o,--output", aas_out, "output file (default: stdout)");
  auto* simp = app.add_subcommand("simplify", "construct the simplified attack structure");
  add_model_options(simp, saas_in);
  simp->add_flag("--dot", saas_dot, "emit Graphviz instead of JSON");
  simp->add_option("-o,--output", saas_out, "output file (default: stdout)");
  auto* synth = app.add_subcommand("synthesize", "synthesize a single attack structure");
  add_model_options(synth, syn_in);
  synth->add_flag("--dot", syn_dot, "emit Graphviz instead of JSON");
  synth->add_option("-o,--output", syn_out, "output file (default: stdout)");

  Inputs sim_in;
  std::string sim_sas, sim_run;
  auto* sim = app.add_subcommand("simulate", "run the induced attack strategy on an observation");
  add_model_options(sim, sim_in);
  sim->add_option("--sas", sim_sas, "SAS document (default: synthesize one)")->check(CLI::ExistingFile);
  sim->add_option("--run", sim_run, "actual observation, e.g. \"b,c\"")->required();

  Inputs or_in;
  std::optional<std::size_t> horizon;
  std::size_t max_nodes = da::oracle::Limits{}.max_nodes;
  auto* orc = app.add_subcommand("oracle", "compare synthesis against brute-force strategy enumeration");
  add_model_options(orc, or_in);
  orc->add_option("--horizon", horizon, "observation length bound (default: SAAS environment states)")
      ->check(CLI::PositiveNumber);
  orc->add_option("--max-nodes", max_nodes, "enumeration limit");

  Inputs dot_in;
  std::string dot_what = "plant", dot_sas, dot_out;
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a model or attack structure");
  dot->add_option("-p,--plant", dot_in.plant, "plant model (JSON)")->required()->check(CLI::ExistingFile);
  dot->add_option("-s,--supervisor", dot_in.supervisor, "supervisor realization (JSON)")->check(CLI::ExistingFile);
  dot->add_option("--secret", dot_in.secret, "secret initial states (default: from the plant)");
  dot->add_option("--graph", dot_what, "what to render")
      ->check(CLI::IsMember({"plant", "supervisor", "closed-loop", "aas", "saas", "sas"}));
  dot->add_option("--sas", dot_sas, "render this SAS document")->check(CLI::ExistingFile);
  dot->add_option("-o,--output", dot_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*validate) return cmd_validate(model, other_sup);
    if (*estimate) return cmd_estimate(est_in, obs);
    if (*opacity) return cmd_check_opacity(op_in);
    if (*build) return cmd_build(aas_in, false, aas_dot, aas_out);
    if (*simp) return cmd_build(saas_in, true, saas_dot, saas_out);
    if (*synth) return cmd_synthesize(syn_in, syn_dot, syn_out);
    if (*sim) return cmd_simulate(sim_in, sim_sas, sim_run);
    if (*orc) return cmd_oracle(or_in, horizon, max_nodes);
    if (*dot) return cmd_export_dot(dot_in, dot_what, dot_sas, dot_out);
  } catch (const da::oracle::LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
