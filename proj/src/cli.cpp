#include "stab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "stab/oracle.hpp"
#include "stab/simulate.hpp"

namespace stab {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kInfeasible = 3;
constexpr int kMismatch = 4;

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_circuit(text.str());
}

ContractionStrategy strategy_from_name(const std::string& name) {
  if (name == "seq") return ContractionStrategy::sequential();
  if (name == "chan") return ContractionStrategy::channel_accumulate();
  if (name == "greedy") return ContractionStrategy::greedy_min_width();
  throw CLI::ValidationError("--strategy", "unknown strategy " + name);
}

int run_prob(const std::string& file, const std::string& outcome,
             const std::string& strategy, std::ostream& out, std::ostream& err) {
  const Circuit circ = load_circuit(file);
  auto ct = final_classical_tableau(circ, strategy_from_name(strategy));
  if (!ct) {
    err << "infeasible: post-selection has zero probability\n";
    return kInfeasible;
  }
  if (outcome.size() != ct->n_bits) {
    err << "outcome must have " << ct->n_bits << " bits\n";
    return kUsage;
  }
  BitVector x(outcome.size());
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i] != '0' && outcome[i] != '1') {
      err << "outcome must be a 0/1 string\n";
      return kUsage;
    }
    x.set(i, outcome[i] == '1');
  }
  const DyadicProb p = strong_prob(*ct, x);
  out << "p = " << p.to_string() << " (= " << p.value() << ")\n";
  return kOk;
}

int run_sample(const std::string& file, std::size_t shots, std::uint64_t seed,
               std::ostream& out, std::ostream& err) {
  const Circuit circ = load_circuit(file);
  auto samples = weak_sample(circ, shots, seed);
  if (!samples) {
    err << "infeasible: post-selection has zero probability\n";
    return kInfeasible;
  }
  for (const auto& x : *samples) out << x.str() << '\n';
  return kOk;
}

int run_channel(const std::string& file, const std::string& strategy, std::ostream& out,
                std::ostream& err) {
  const Circuit circ = load_circuit(file);
  const Diagram d = Diagram::from_circuit(circ);
  auto t = d.contract_all(strategy_from_name(strategy));
  if (!t) {
    err << "infeasible: the circuit is the zero map\n";
    return kInfeasible;
  }
  out << t->to_text();
  return kOk;
}

int run_verify(const std::string& file, std::size_t max_qubits, std::ostream& out,
               std::ostream& err) {
  const Circuit circ = load_circuit(file);
  const auto steps = oracle::circuit_steps(circ);
  for (const auto& st : steps)
    if (std::max(st.ambient_in, st.ambient_out) > max_qubits) {
      err << "circuit exceeds " << max_qubits << " qubits; dense verification skipped\n";
      return kUsage;
    }
  const Diagram d = Diagram::from_circuit(circ);
  auto t = d.contract_all(ContractionStrategy::sequential());
  if (!t) {
    err << "infeasible: the circuit is the zero map\n";
    return kInfeasible;
  }
  const oracle::DensePTM tab = oracle::ptm_of_tableau(*t);
  const oracle::DensePTM dense = oracle::ptm_of_circuit_dense(circ);
  if (tab.rows() != dense.rows() || tab.cols() != dense.cols()) {
    err << "verification mismatch: channel dimensions differ\n";
    return kMismatch;
  }
  // Post-selection drops scalar weights in the tableau picture, so compare
  // up to a positive scale fixed by the largest dense entry.
  Eigen::Index mr = 0, mc = 0;
  dense.cwiseAbs().maxCoeff(&mr, &mc);
  double lambda = 1.0;
  if (dense(mr, mc) != 0.0) {
    if (tab(mr, mc) == 0.0) {
      err << "verification mismatch: support differs\n";
      return kMismatch;
    }
    lambda = dense(mr, mc) / tab(mr, mc);
  }
  if (lambda <= 0.0 || (dense - lambda * tab).cwiseAbs().maxCoeff() > 1e-9) {
    err << "verification mismatch: transfer matrices differ\n";
    return kMismatch;
  }
  out << "verified: tableau channel matches dense oracle\n";
  return kOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stabilizer circuit engine (.scf circuits)"};
  app.require_subcommand(1);

  std::string file, outcome, strategy = "seq";
  std::size_t shots = 1, max_qubits = 8;
  std::uint64_t seed = 0;

  auto* prob = app.add_subcommand(
      "prob", "exact probability of an outcome bit string (record statement order)");
  prob->add_option("file", file)->required();
  prob->add_option("--outcome", outcome, "outcome bits, one per record, statement order")
      ->required();
  prob->add_option("--strategy", strategy, "seq|chan|greedy");

  auto* sample = app.add_subcommand("sample", "draw outcome samples (one per line)");
  sample->add_option("file", file)->required();
  sample->add_option("--shots", shots)->required();
  sample->add_option("--seed", seed)->required();

  auto* channel = app.add_subcommand("channel", "print the circuit's canonical tableau");
  channel->add_option("file", file)->required();
  channel->add_option("--strategy", strategy, "seq|chan|greedy");

  auto* verify =
      app.add_subcommand("verify", "check the tableau channel against the dense oracle");
  verify->add_option("file", file)->required();
  verify->add_option("--max-qubits", max_qubits);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (prob->parsed()) return run_prob(file, outcome, strategy, out, err);
    if (sample->parsed()) return run_sample(file, shots, seed, out, err);
    if (channel->parsed()) return run_channel(file, strategy, out, err);
    if (verify->parsed()) return run_verify(file, max_qubits, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace stab
