#include "stab/circuit.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace stab {

namespace {

enum class QubitState { Unused, Live, Dead };

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

std::size_t parse_qubit(const std::string& tok, std::size_t n_qubits, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a qubit index, got '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(line, "expected a qubit index, got '" + tok + "'");
  if (v >= n_qubits) throw ParseError(line, "qubit " + tok + " out of range");
  return static_cast<std::size_t>(v);
}

const std::map<std::string, ElementOp>& mnemonics() {
  static const std::map<std::string, ElementOp> m = {
      {"PREP0", ElementOp::Prep0},       {"PREP1", ElementOp::Prep1},
      {"PREP+", ElementOp::PrepPlus},    {"PREP-", ElementOp::PrepMinus},
      {"CHAOTIC", ElementOp::PrepChaotic}, {"DISCARD", ElementOp::Discard},
      {"H", ElementOp::GateH},           {"S", ElementOp::GateS},
      {"X", ElementOp::GateX},           {"Y", ElementOp::GateY},
      {"Z", ElementOp::GateZ},           {"DEPHASE_Z", ElementOp::DephaseZ},
      {"DEPHASE_X", ElementOp::DephaseX}, {"CNOT", ElementOp::GateCNOT},
      {"CZ", ElementOp::GateCZ},
  };
  return m;
}

}  // namespace

std::vector<std::string> Circuit::output_records() const {
  std::set<std::string> postselected;
  for (const auto& ins : instructions)
    if (ins.kind.op == ElementOp::Postselect) postselected.insert(ins.record);
  std::vector<std::string> out;
  for (const auto& ins : instructions) {
    if (ins.kind.op == ElementOp::Postselect) continue;
    if (!ins.record.empty() && !postselected.count(ins.record)) out.push_back(ins.record);
  }
  return out;
}

Circuit parse_circuit(std::string_view text) {
  Circuit circ;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::vector<QubitState> state;
  std::map<std::string, bool> records;  // name -> already postselected

  auto expect_targets = [&](const std::vector<std::string>& toks, std::size_t first,
                            std::size_t count) {
    if (toks.size() != first + count)
      throw ParseError(lineno, toks[0] + " expects " + std::to_string(count) + " qubit(s)");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(parse_qubit(toks[first + i], circ.n_qubits, lineno));
    std::set<std::size_t> distinct(out.begin(), out.end());
    if (distinct.size() != out.size())
      throw ParseError(lineno, "duplicate target qubit");
    return out;
  };
  auto use_qubit = [&](std::size_t q) {
    if (state[q] == QubitState::Dead)
      throw ParseError(lineno, "qubit " + std::to_string(q) + " used after being consumed");
    state[q] = QubitState::Live;
  };
  auto parse_record_name = [&](const std::string& tok) {
    if (tok.empty() || !(std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_'))
      throw ParseError(lineno, "invalid record name '" + tok + "'");
    return tok;
  };

  while (std::getline(is, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "qubits")
        throw ParseError(lineno, "expected header 'qubits N'");
      try {
        circ.n_qubits = std::stoull(toks[1]);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad qubit count '" + toks[1] + "'");
      }
      state.assign(circ.n_qubits, QubitState::Unused);
      have_header = true;
      continue;
    }

    Instruction ins;
    ins.line = lineno;
    const std::string& op = toks[0];

    if (auto it = mnemonics().find(op); it != mnemonics().end()) {
      ins.kind = ElementKind::simple(it->second);
      const std::size_t arity = ins.kind.arity_in() > 0 ? ins.kind.arity_in() : 1;
      ins.targets = expect_targets(toks, 1, arity);
      if (ins.kind.arity_in() == 0) {
        // Preparations create a fresh wire.
        if (state[ins.targets[0]] == QubitState::Live)
          throw ParseError(lineno, "qubit " + toks[1] + " is already live; discard it first");
        if (state[ins.targets[0]] == QubitState::Dead)
          throw ParseError(lineno, "qubit " + toks[1] + " used after being consumed");
        state[ins.targets[0]] = QubitState::Live;
      } else {
        for (auto q : ins.targets) use_qubit(q);
        if (ins.kind.op == ElementOp::Discard) state[ins.targets[0]] = QubitState::Dead;
      }
    } else if (op == "MZ") {
      if (toks.size() != 4 || toks[2] != "->")
        throw ParseError(lineno, "usage: MZ q -> name");
      const std::size_t q = parse_qubit(toks[1], circ.n_qubits, lineno);
      use_qubit(q);
      state[q] = QubitState::Dead;
      ins.kind = ElementKind::measure(pauli_from_string("Z").point, false);
      ins.targets = {q};
      ins.record = parse_record_name(toks[3]);
      if (records.count(ins.record))
        throw ParseError(lineno, "duplicate record name '" + ins.record + "'");
      records[ins.record] = false;
    } else if (op == "MEASURE") {
      if (toks.size() < 5 || toks[toks.size() - 2] != "->")
        throw ParseError(lineno, "usage: MEASURE [+|-]PAULI q1 ... -> name");
      PauliObservable obs;
      try {
        obs = pauli_from_string(toks[1]);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
      const std::size_t count = toks.size() - 4;
      if (obs.point.n_qubits() != count)
        throw ParseError(lineno, "Pauli string length does not match target count");
      ins.targets = expect_targets(
          std::vector<std::string>(toks.begin(), toks.end() - 2), 2, count);
      for (auto q : ins.targets) use_qubit(q);
      ins.kind = ElementKind::measure_keep(obs.point, obs.sign);
      ins.record = parse_record_name(toks.back());
      if (records.count(ins.record))
        throw ParseError(lineno, "duplicate record name '" + ins.record + "'");
      records[ins.record] = false;
    } else if (op == "POSTSELECT") {
      if (toks.size() != 4 || toks[2] != "=")
        throw ParseError(lineno, "usage: POSTSELECT name = 0|1");
      ins.record = toks[1];
      auto it2 = records.find(ins.record);
      if (it2 == records.end())
        throw ParseError(lineno, "unknown record '" + ins.record + "'");
      if (it2->second)
        throw ParseError(lineno, "record '" + ins.record + "' already post-selected");
      it2->second = true;
      bool value;
      if (toks[3] == "0") {
        value = false;
      } else if (toks[3] == "1") {
        value = true;
      } else {
        throw ParseError(lineno, "post-selection value must be 0 or 1");
      }
      ins.kind = ElementKind::postselect(pauli_from_string("Z").point, value);
    } else {
      throw ParseError(lineno, "unknown mnemonic '" + op + "'");
    }
    circ.instructions.push_back(std::move(ins));
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'qubits N' header");
  return circ;
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n_qubits << '\n';
  for (const auto& ins : c.instructions) {
    switch (ins.kind.op) {
      case ElementOp::Prep0: os << "PREP0"; break;
      case ElementOp::Prep1: os << "PREP1"; break;
      case ElementOp::PrepPlus: os << "PREP+"; break;
      case ElementOp::PrepMinus: os << "PREP-"; break;
      case ElementOp::PrepChaotic: os << "CHAOTIC"; break;
      case ElementOp::Discard: os << "DISCARD"; break;
      case ElementOp::GateH: os << "H"; break;
      case ElementOp::GateS: os << "S"; break;
      case ElementOp::GateX: os << "X"; break;
      case ElementOp::GateY: os << "Y"; break;
      case ElementOp::GateZ: os << "Z"; break;
      case ElementOp::DephaseZ: os << "DEPHASE_Z"; break;
      case ElementOp::DephaseX: os << "DEPHASE_X"; break;
      case ElementOp::GateCNOT: os << "CNOT"; break;
      case ElementOp::GateCZ: os << "CZ"; break;
      case ElementOp::MeasureObservable:
        os << "MZ " << ins.targets[0] << " -> " << ins.record << '\n';
        continue;
      case ElementOp::MeasureKeep: {
        os << "MEASURE " << to_string(PauliObservable{ins.kind.u, ins.kind.c});
        for (auto q : ins.targets) os << ' ' << q;
        os << " -> " << ins.record << '\n';
        continue;
      }
      case ElementOp::Postselect:
        os << "POSTSELECT " << ins.record << " = " << (ins.kind.c ? 1 : 0) << '\n';
        continue;
      default:
        throw std::logic_error("print_circuit: unsupported element");
    }
    for (auto q : ins.targets) os << ' ' << q;
    os << '\n';
  }
  return os.str();
}

}  // namespace stab
