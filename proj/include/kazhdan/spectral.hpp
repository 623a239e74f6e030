#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "kazhdan/graph.hpp"
#include "kazhdan/models.hpp"

namespace kazhdan {

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LaplacianKind { walk, normalized };

inline constexpr double symmetry_tolerance = 1e-12;
inline constexpr double criterion_margin = 1e-8;

// Zero-eigenvalue tolerance for an n x n Laplacian.
inline double zero_tolerance(int dimension) { return 1e-8 * dimension; }

// Adjacency with multiplicities; a loop adds 2 on the diagonal.
Eigen::MatrixXd adjacency_matrix(const Multigraph& g);

// walk: I - D^-1 A; normalized: I - D^-1/2 A D^-1/2. Throws SpectralError on a
// zero-degree vertex unless `zero_isolated_rows`, which leaves those rows zero.
Eigen::MatrixXd laplacian(const Multigraph& g, LaplacianKind kind,
                          bool zero_isolated_rows = false);

// Full spectrum of a symmetric matrix, ascending.
std::vector<double> eig_symmetric(const Eigen::MatrixXd& m);

// Spectrum of the chosen Laplacian, ascending. The walk Laplacian is not
// symmetric; its spectrum is computed with a general eigensolver.
std::vector<double> laplacian_spectrum(const Multigraph& g, LaplacianKind kind);

struct Lambda1 {
  double value = 0.0;
  bool connected = false;
};

Lambda1 lambda1(const Multigraph& g);

struct SpectralReport {
  std::vector<double> eigenvalues;
  std::optional<double> lambda1;
  bool connected = false;
  double min_degree = 0.0;
  double max_degree = 0.0;
  double mean_degree = 0.0;
  bool criterion = false;
  std::string reason;
};

SpectralReport spectral_report(const Multigraph& g);

struct CriterionResult {
  bool holds = false;
  SpectralReport report;
};

// Connected L(S) with lambda1 > 1/2 + margin. A sufficient condition only.
CriterionResult spectral_criterion(const Presentation& p);

// max |Delta - sum_i D_i D^-1 Delta_i| over the link graph and its three parts.
double decomposition_identity_residual(const Presentation& p);

struct FriedmanBound {
  int v = 0;
  double c = 0.0;
};
struct FriedmanBipartiteBound {
  int v = 0;
  double eps = 0.0;
};
struct ChungBound {
  double n = 0.0;
  double p = 0.0;
  double g = 0.0;
};

double bound(const FriedmanBound& b);
double bound(const FriedmanBipartiteBound& b);
double bound(const ChungBound& b);

std::string report_to_json(const SpectralReport& r);

}  // namespace kazhdan
