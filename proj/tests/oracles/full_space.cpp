#include "full_space.hpp"

#include <cmath>

namespace oracle {

FullSpaceChain::FullSpaceChain(const spinlink::ChainSpec& spec) : n_(spec.n_nodes()) {
  const Eigen::Index dim = Eigen::Index{1} << n_;
  h_ = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (int b = 1; b < n_; ++b) {
      const bool x = (s >> (b - 1)) & 1;
      const bool y = (s >> b) & 1;
      if (x == y) continue;
      const Eigen::Index flipped = s ^ (Eigen::Index{3} << (b - 1));
      h_(flipped, s) += 0.5 * spec.bond(b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h_);
  energies_ = eig.eigenvalues();
  vectors_ = eig.eigenvectors();
}

Eigen::VectorXcd FullSpaceChain::evolve(const spinlink::SenderState& s, double t) const {
  const Eigen::Index dim = h_.rows();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi[0] = s.a0;
  for (int k = 1; k <= s.n_sender; ++k) psi[Eigen::Index{1} << (k - 1)] = s.a(k);
  for (int n = 1; n <= s.n_sender; ++n) {
    for (int m = n + 1; m <= s.n_sender; ++m) psi[(Eigen::Index{1} << (n - 1)) | (Eigen::Index{1} << (m - 1))] = s.a(n, m);
  }
  Eigen::VectorXcd c = vectors_.transpose().cast<std::complex<double>>() * psi;
  for (Eigen::Index i = 0; i < dim; ++i) c[i] *= std::polar(1.0, -energies_[i] * t);
  return vectors_.cast<std::complex<double>>() * c;
}

Eigen::Matrix4cd FullSpaceChain::receiver_rho(const spinlink::SenderState& s, double t) const {
  const Eigen::VectorXcd psi = evolve(s, t);
  const Eigen::Index env_dim = Eigen::Index{1} << (n_ - 2);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (Eigen::Index env = 0; env < env_dim; ++env) {
    Eigen::Vector4cd v;
    for (Eigen::Index r = 0; r < 4; ++r) v[r] = psi[env | (r << (n_ - 2))];
    rho += v * v.adjoint();
  }
  return rho;
}

spinlink::SenderState random_sender(std::mt19937_64& rng, int n_sender) {
  std::normal_distribution<double> g;
  spinlink::SenderState s(n_sender);
  s.a0 = std::abs(g(rng));
  for (auto& v : s.single) v = {g(rng), g(rng)};
  for (auto& v : s.pair) v = {g(rng), g(rng)};
  const double norm = std::sqrt(s.norm_squared());
  s.a0 /= norm;
  for (auto& v : s.single) v /= norm;
  for (auto& v : s.pair) v /= norm;
  return s;
}

}  // namespace oracle
