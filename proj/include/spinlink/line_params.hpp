#pragma once

#include <array>
#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinlink/basis.hpp"

namespace spinlink {

// The eight collections of line parameters. N is the last node, N-1 the
// one before it; the receiver is {N-1, N}.
enum class ParamKind {
  p_N,      // p_{N;k}
  p_Nm1,    // p_{N-1;k}
  p_pair,   // p_{(N-1)N;nm}
  P_Nm1,    // P_{N-1;k,n,m}
  P_N,      // P_{N;k,n,m}
  P_mm,     // P_{(N-1)(N-1);k,l,n,m}
  P_mN,     // P_{(N-1)N;k,l,n,m}
  P_NN,     // P_{NN;k,l,n,m}
};

inline constexpr std::array<ParamKind, 8> kAllParamKinds{ParamKind::p_N,  ParamKind::p_Nm1, ParamKind::p_pair,
                                                         ParamKind::P_Nm1, ParamKind::P_N,  ParamKind::P_mm,
                                                         ParamKind::P_mN,  ParamKind::P_NN};

std::string_view kind_name(ParamKind kind);
std::optional<ParamKind> parse_kind(std::string_view name);
// Number of sender indices the kind carries: 1, 2, 3 or 4.
int index_arity(ParamKind kind);

// A parameter and its 1-based sender indices; unused slots are 0.
struct ParamKey {
  ParamKind kind = ParamKind::p_N;
  std::array<int, 4> idx{};

  auto operator<=>(const ParamKey&) const = default;

  // "1 3 1 2" style index list.
  std::string indices() const;
  // Label with explicit node numbers, e.g. "P_{19,20;1,3,1,2}".
  std::string label(int n_nodes) const;
};

ParamKey make_key(ParamKind kind, std::initializer_list<int> indices);

enum class Family { I, II, III };
std::string_view family_name(Family family);

// Count of complex parameters: 2 N_S + C + 2 N_S C + 3 C^2 with C = C(N_S, 2).
constexpr std::size_t line_param_count(int n_sender) {
  const std::size_t s = static_cast<std::size_t>(n_sender);
  const std::size_t c = pair_count(n_sender);
  return 2 * s + c + 2 * s * c + 3 * c * c;
}

/// Complex line parameters of a sender of N_S nodes at a fixed time.
///
/// Stored as one flat table in canonical key order: kinds in declaration
/// order, indices lexicographic, pairs n < m. Matrix-valued kinds (P_mm,
/// P_mN, P_NN) are full C x C blocks, so Hermitian partners appear twice.
class LineParams {
 public:
  LineParams(int n_sender, int n_nodes, double t);

  int n_sender() const noexcept { return n_sender_; }
  int n_nodes() const noexcept { return n_nodes_; }
  double time() const noexcept { return t_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const ParamKey> keys() const noexcept { return keys_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  std::optional<std::size_t> find(const ParamKey& key) const;
  cplx operator[](const ParamKey& key) const;
  cplx& operator[](const ParamKey& key);

  // Structured access with 0-based sender node (k) and pair (a, b) positions.
  cplx p_N(int k) const { return values_[offset(ParamKind::p_N) + k]; }
  cplx p_Nm1(int k) const { return values_[offset(ParamKind::p_Nm1) + k]; }
  cplx p_pair(int a) const { return values_[offset(ParamKind::p_pair) + a]; }
  cplx P_Nm1(int k, int a) const { return values_[offset(ParamKind::P_Nm1) + k * c_ + a]; }
  cplx P_N(int k, int a) const { return values_[offset(ParamKind::P_N) + k * c_ + a]; }
  cplx P_mm(int a, int b) const { return values_[offset(ParamKind::P_mm) + a * c_ + b]; }
  cplx P_mN(int a, int b) const { return values_[offset(ParamKind::P_mN) + a * c_ + b]; }
  cplx P_NN(int a, int b) const { return values_[offset(ParamKind::P_NN) + a * c_ + b]; }

  // Mutable slot for a kind at 0-based positions (second is ignored for vector kinds).
  cplx& slot(ParamKind kind, int first, int second = 0);

 private:
  std::size_t offset(ParamKind kind) const noexcept { return offsets_[static_cast<std::size_t>(kind)]; }

  int n_sender_;
  int n_nodes_;
  double t_;
  int c_;
  std::array<std::size_t, 8> offsets_{};
  std::vector<ParamKey> keys_;
  std::vector<cplx> values_;
};

// Largest |X[a][b] - conj(X[b][a])| over the P_mm and P_NN blocks.
double hermitian_pair_asymmetry(const LineParams& params);

// CSV with columns kind,indices,re,im,family. Lines starting with '#' are a
// provenance header and are skipped on read. `families` may be empty.
void write_params_csv(std::ostream& out, const LineParams& params, std::span<const Family> families,
                      std::string_view provenance = {});
LineParams read_params_csv(std::istream& in, int n_sender, int n_nodes = 0, double t = 0.0);

}  // namespace spinlink
