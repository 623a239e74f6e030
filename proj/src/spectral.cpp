#include "kazhdan/spectral.hpp"

#include <algorithm>
#include <cmath>
#include "json.hpp"
#include <numeric>

#include "kazhdan/linkgraph.hpp"

namespace kazhdan {

Eigen::MatrixXd adjacency_matrix(const Multigraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      a(e.u, e.u) += 2.0;
    } else {
      a(e.u, e.v) += 1.0;
      a(e.v, e.u) += 1.0;
    }
  }
  return a;
}

Eigen::MatrixXd laplacian(const Multigraph& g, LaplacianKind kind, bool zero_isolated_rows) {
  const int n = g.vertex_count();
  const auto deg = g.degrees();
  Eigen::MatrixXd a = adjacency_matrix(g);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (deg[static_cast<std::size_t>(i)] == 0 && !zero_isolated_rows) {
      throw SpectralError("vertex " + g.label(i) + " has degree 0");
    }
  }
  for (int i = 0; i < n; ++i) {
    const double di = deg[static_cast<std::size_t>(i)];
    if (di == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double dj = deg[static_cast<std::size_t>(j)];
      if (a(i, j) == 0.0 || dj == 0.0) continue;
      out(i, j) = kind == LaplacianKind::walk ? -a(i, j) / di : -a(i, j) / std::sqrt(di * dj);
    }
    out(i, i) += 1.0;
  }
  return out;
}

std::vector<double> eig_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw SpectralError("matrix is not square");
  if (m.size() == 0) return {};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > symmetry_tolerance * scale) {
    throw SpectralError("matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SpectralError("eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> laplacian_spectrum(const Multigraph& g, LaplacianKind kind) {
  const Eigen::MatrixXd lap = laplacian(g, kind);
  if (kind == LaplacianKind::normalized) return eig_symmetric(lap);
  if (lap.size() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(lap, false);
  if (solver.info() != Eigen::Success) throw SpectralError("eigensolver did not converge");
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    out.push_back(solver.eigenvalues()[i].real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::optional<double> first_above_zero(const std::vector<double>& ev, int dimension) {
  const double tol = zero_tolerance(dimension);
  for (double x : ev) {
    if (x > tol) return x;
  }
  return std::nullopt;
}

}  // namespace

Lambda1 lambda1(const Multigraph& g) {
  const auto ev = eig_symmetric(laplacian(g, LaplacianKind::normalized));
  Lambda1 out;
  out.connected = is_connected(g);
  if (out.connected) {
    out.value = ev.size() >= 2 ? ev[1] : std::nan("");
  } else {
    out.value = first_above_zero(ev, g.vertex_count()).value_or(0.0);
  }
  return out;
}

SpectralReport spectral_report(const Multigraph& g) {
  SpectralReport r;
  const auto deg = g.degrees();
  if (!deg.empty()) {
    const auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
    r.min_degree = *lo;
    r.max_degree = *hi;
    r.mean_degree = std::accumulate(deg.begin(), deg.end(), 0.0) / static_cast<double>(deg.size());
  }
  r.connected = is_connected(g);
  const auto isolated = std::find(deg.begin(), deg.end(), 0);
  if (isolated != deg.end()) {
    r.reason = "isolated vertex " + g.label(static_cast<int>(isolated - deg.begin()));
  } else if (!r.connected) {
    r.reason = "disconnected";
  }
  r.eigenvalues = eig_symmetric(laplacian(g, LaplacianKind::normalized, true));
  if (r.connected && r.eigenvalues.size() >= 2) {
    r.lambda1 = r.eigenvalues[1];
  } else {
    r.lambda1 = first_above_zero(r.eigenvalues, g.vertex_count());
  }
  r.criterion = r.connected && r.lambda1 && *r.lambda1 > 0.5 + criterion_margin;
  if (r.connected && !r.criterion) r.reason = "lambda1 <= 1/2";
  return r;
}

CriterionResult spectral_criterion(const Presentation& p) {
  const LinkGraph link = build_link_graph(p);
  CriterionResult out;
  out.report = spectral_report(link.graph);
  out.holds = out.report.criterion;
  return out;
}

double decomposition_identity_residual(const Presentation& p) {
  const LinkGraph link = build_link_graph(p);
  const LinkParts parts = split_link_parts(p);
  const int n = link.graph.vertex_count();
  const auto deg = link.graph.degrees();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, n);
  for (const Multigraph& part : parts.parts) {
    const auto part_deg = part.degrees();
    const Eigen::MatrixXd delta_i = laplacian(part, LaplacianKind::walk, true);
    for (int row = 0; row < n; ++row) {
      const double weight = static_cast<double>(part_deg[static_cast<std::size_t>(row)]) /
                            deg[static_cast<std::size_t>(row)];
      rhs.row(row) += weight * delta_i.row(row);
    }
  }
  const Eigen::MatrixXd delta = laplacian(link.graph, LaplacianKind::walk);
  return n == 0 ? 0.0 : (delta - rhs).cwiseAbs().maxCoeff();
}

double bound(const FriedmanBound& b) {
  if (b.v < 1) throw SpectralError("friedman bound: v must be >= 1");
  if (b.c < 0) throw SpectralError("friedman bound: c must be >= 0");
  const double v = b.v;
  return 1.0 - (std::sqrt(2.0 * v - 1.0) / v + std::log(v) / v + b.c / v);
}

double bound(const FriedmanBipartiteBound& b) {
  if (b.v < 1) throw SpectralError("bipartite friedman bound: v must be >= 1");
  if (b.eps < 0) throw SpectralError("bipartite friedman bound: eps must be >= 0");
  const double v = b.v;
  return 1.0 - (std::sqrt(2.0 * v) * std::pow(v - 1.0, 0.25) / v + b.eps / v);
}

double bound(const ChungBound& b) {
  if (b.n < 2) throw SpectralError("chung bound: n must be >= 2");
  if (!(b.p > 0.0 && b.p < 1.0)) throw SpectralError("chung bound: p must lie in (0, 1)");
  if (b.g < 0) throw SpectralError("chung bound: g must be >= 0");
  const double np = b.n * b.p;
  const double log_n = std::log(b.n);
  return 1.0 - 4.0 / std::sqrt(np) - b.g * log_n * log_n / np;
}

std::string report_to_json(const SpectralReport& r) {
  nlohmann::ordered_json j;
  j["eigenvalues"] = r.eigenvalues;
  j["lambda1"] = r.lambda1 ? nlohmann::ordered_json(*r.lambda1) : nlohmann::ordered_json(nullptr);
  j["connected"] = r.connected;
  j["criterion"] = r.criterion;
  j["min_degree"] = r.min_degree;
  j["max_degree"] = r.max_degree;
  j["mean_degree"] = r.mean_degree;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j.dump();
}

}  // namespace kazhdan
