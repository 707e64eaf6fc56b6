#include "spinlink/line_params.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spinlink/error.hpp"

namespace spinlink {

std::string_view kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::p_N: return "p_N";
    case ParamKind::p_Nm1: return "p_N-1";
    case ParamKind::p_pair: return "p_(N-1)N";
    case ParamKind::P_Nm1: return "P_N-1";
    case ParamKind::P_N: return "P_N";
    case ParamKind::P_mm: return "P_(N-1)(N-1)";
    case ParamKind::P_mN: return "P_(N-1)N";
    case ParamKind::P_NN: return "P_NN";
  }
  return "?";
}

std::optional<ParamKind> parse_kind(std::string_view name) {
  for (auto kind : kAllParamKinds) {
    if (kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

int index_arity(ParamKind kind) {
  switch (kind) {
    case ParamKind::p_N:
    case ParamKind::p_Nm1: return 1;
    case ParamKind::p_pair: return 2;
    case ParamKind::P_Nm1:
    case ParamKind::P_N: return 3;
    default: return 4;
  }
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::I: return "I";
    case Family::II: return "II";
    case Family::III: return "III";
  }
  return "?";
}

std::string ParamKey::indices() const {
  std::string out;
  for (int i = 0; i < index_arity(kind); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(idx[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::string ParamKey::label(int n_nodes) const {
  const std::string last = n_nodes > 0 ? std::to_string(n_nodes) : "N";
  const std::string prev = n_nodes > 0 ? std::to_string(n_nodes - 1) : "N-1";
  std::string nodes;
  char letter = 'P';
  switch (kind) {
    case ParamKind::p_N: letter = 'p'; nodes = last; break;
    case ParamKind::p_Nm1: letter = 'p'; nodes = prev; break;
    case ParamKind::p_pair: letter = 'p'; nodes = prev + "," + last; break;
    case ParamKind::P_Nm1: nodes = prev; break;
    case ParamKind::P_N: nodes = last; break;
    case ParamKind::P_mm: nodes = prev + "," + prev; break;
    case ParamKind::P_mN: nodes = prev + "," + last; break;
    case ParamKind::P_NN: nodes = last + "," + last; break;
  }
  std::string list = indices();
  for (auto& ch : list) {
    if (ch == ' ') ch = ',';
  }
  return fmt::format("{}_{{{};{}}}", letter, nodes, list);
}

ParamKey make_key(ParamKind kind, std::initializer_list<int> indices) {
  if (static_cast<int>(indices.size()) != index_arity(kind)) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("{} takes {} indices, got {}", kind_name(kind), index_arity(kind), indices.size()));
  }
  ParamKey key{kind, {}};
  std::size_t i = 0;
  for (int v : indices) key.idx[i++] = v;
  return key;
}

LineParams::LineParams(int n_sender, int n_nodes, double t)
    : n_sender_(n_sender), n_nodes_(n_nodes), t_(t), c_(static_cast<int>(pair_count(n_sender))) {
  if (n_sender < 2) throw Error(ErrorCode::unsupported_sender_size, "sender needs at least two nodes");
  const ExcitationBasis sender(n_sender);
  const auto pairs = sender.pairs();
  for (auto kind : kAllParamKinds) {
    offsets_[static_cast<std::size_t>(kind)] = keys_.size();
    switch (kind) {
      case ParamKind::p_N:
      case ParamKind::p_Nm1:
        for (int k = 1; k <= n_sender; ++k) keys_.push_back({kind, {k, 0, 0, 0}});
        break;
      case ParamKind::p_pair:
        for (const auto& p : pairs) keys_.push_back({kind, {p.first, p.second, 0, 0}});
        break;
      case ParamKind::P_Nm1:
      case ParamKind::P_N:
        for (int k = 1; k <= n_sender; ++k) {
          for (const auto& p : pairs) keys_.push_back({kind, {k, p.first, p.second, 0}});
        }
        break;
      default:
        for (const auto& a : pairs) {
          for (const auto& b : pairs) keys_.push_back({kind, {a.first, a.second, b.first, b.second}});
        }
        break;
    }
  }
  values_.assign(keys_.size(), cplx{0.0, 0.0});
}

std::optional<std::size_t> LineParams::find(const ParamKey& key) const {
  const std::size_t begin = offset(key.kind);
  const std::size_t end =
      key.kind == ParamKind::P_NN ? keys_.size() : offset(static_cast<ParamKind>(static_cast<int>(key.kind) + 1));
  for (std::size_t i = begin; i < end; ++i) {
    if (keys_[i] == key) return i;
  }
  return std::nullopt;
}

cplx LineParams::operator[](const ParamKey& key) const {
  const auto pos = find(key);
  if (!pos) throw Error(ErrorCode::invalid_argument, fmt::format("no parameter {}", key.label(n_nodes_)));
  return values_[*pos];
}

cplx& LineParams::operator[](const ParamKey& key) {
  const auto pos = find(key);
  if (!pos) throw Error(ErrorCode::invalid_argument, fmt::format("no parameter {}", key.label(n_nodes_)));
  return values_[*pos];
}

cplx& LineParams::slot(ParamKind kind, int first, int second) {
  switch (index_arity(kind)) {
    case 1:
    case 2: return values_[offset(kind) + static_cast<std::size_t>(first)];
    default: return values_[offset(kind) + static_cast<std::size_t>(first * c_ + second)];
  }
}

double hermitian_pair_asymmetry(const LineParams& params) {
  const int c = static_cast<int>(pair_count(params.n_sender()));
  double worst = 0.0;
  for (int a = 0; a < c; ++a) {
    for (int b = 0; b < c; ++b) {
      worst = std::max(worst, std::abs(params.P_mm(a, b) - std::conj(params.P_mm(b, a))));
      worst = std::max(worst, std::abs(params.P_NN(a, b) - std::conj(params.P_NN(b, a))));
    }
  }
  return worst;
}

void write_params_csv(std::ostream& out, const LineParams& params, std::span<const Family> families,
                      std::string_view provenance) {
  if (!families.empty() && families.size() != params.size()) {
    throw Error(ErrorCode::size_mismatch, "family tags do not match the parameter table");
  }
  if (!provenance.empty()) {
    std::istringstream lines{std::string(provenance)};
    for (std::string line; std::getline(lines, line);) fmt::print(out, "# {}\n", line);
  }
  fmt::print(out, "# n_sender: {}\n# n_nodes: {}\n# t: {:.17g}\n", params.n_sender(), params.n_nodes(), params.time());
  fmt::print(out, "kind,indices,re,im,family\n");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& key = params.keys()[i];
    const auto value = params.values()[i];
    fmt::print(out, "{},{},{:.17g},{:.17g},{}\n", kind_name(key.kind), key.indices(), value.real(), value.imag(),
               families.empty() ? std::string_view{} : family_name(families[i]));
  }
}

LineParams read_params_csv(std::istream& in, int n_sender, int n_nodes, double t) {
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string name;
      meta >> name;
      if (name == "n_sender:") meta >> n_sender;
      else if (name == "n_nodes:") meta >> n_nodes;
      else if (name == "t:") meta >> t;
      continue;
    }
    rows.push_back(line);
  }
  if (rows.empty() || rows.front().rfind("kind,", 0) != 0) {
    throw Error(ErrorCode::invalid_argument, "parameter CSV lacks the kind,indices,re,im header");
  }
  LineParams params(n_sender, n_nodes, t);
  std::vector<bool> seen(params.size(), false);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::vector<std::string> fields;
    std::istringstream row(rows[r]);
    for (std::string field; std::getline(row, field, ',');) fields.push_back(field);
    if (fields.size() < 4) {
      throw Error(ErrorCode::invalid_argument, fmt::format("parameter CSV row {} has {} fields", r, fields.size()));
    }
    const auto kind = parse_kind(fields[0]);
    if (!kind) throw Error(ErrorCode::invalid_argument, fmt::format("unknown parameter kind '{}'", fields[0]));
    ParamKey key{*kind, {}};
    std::istringstream idx(fields[1]);
    for (int i = 0; i < index_arity(*kind); ++i) idx >> key.idx[static_cast<std::size_t>(i)];
    const auto pos = params.find(key);
    if (!idx || !pos) {
      throw Error(ErrorCode::invalid_argument, fmt::format("bad indices '{}' for {}", fields[1], fields[0]));
    }
    try {
      params.values()[*pos] = {std::stod(fields[2]), std::stod(fields[3])};
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, fmt::format("non-numeric value in parameter CSV row {}", r));
    }
    seen[*pos] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("parameter CSV misses {}", params.keys()[i].label(params.n_nodes())));
    }
  }
  return params;
}

}  // namespace spinlink
