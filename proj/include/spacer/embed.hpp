#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "spacer/error.hpp"
#include "spacer/parallel.hpp"

namespace spacer {

struct EmbeddingSample {
  std::string label;
  std::vector<double> vector;
};

/// Samples plus the class list in first-appearance order.
struct EmbeddingDataset {
  std::vector<std::string> classes;
  std::vector<EmbeddingSample> samples;

  std::size_t dim() const { return samples.empty() ? 0 : samples.front().vector.size(); }

  void add(std::string label, std::vector<double> v) {
    if (!samples.empty() && v.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "sample dimension differs");
    if (std::find(classes.begin(), classes.end(), label) == classes.end()) classes.push_back(label);
    samples.push_back({std::move(label), std::move(v)});
  }

  std::vector<std::vector<double>> class_vectors(const std::string& label) const {
    std::vector<std::vector<double>> out;
    for (const auto& s : samples) {
      if (s.label == label) out.push_back(s.vector);
    }
    return out;
  }

  Eigen::MatrixXd matrix() const {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = samples[i].vector[j];
    }
    return x;
  }
};

/// Scales every sample to unit Euclidean norm; zero vectors are left as-is.
inline EmbeddingDataset unit_normalized(EmbeddingDataset ds) {
  for (auto& s : ds.samples) {
    double n = 0.0;
    for (double x : s.vector) n += x * x;
    n = std::sqrt(n);
    if (n > 0.0) {
      for (double& x : s.vector) x /= n;
    }
  }
  return ds;
}

enum class ProjectionKind { Pca, PcaThenLda };

/// y = basis^T (x - mean). Basis columns are orthonormal.
struct ProjectionModel {
  ProjectionKind kind = ProjectionKind::Pca;
  Eigen::VectorXd mean;
  Eigen::MatrixXd basis;  // d x k
  // PCA: variance along every principal axis of the data (full spectrum,
  // descending). LDA: generalized eigenvalues of the kept discriminants.
  std::vector<double> explained_variance;
  std::size_t pre_pca_dims = 0;  // LDA only
  bool low_discrimination = false;

  std::size_t dims() const { return static_cast<std::size_t>(basis.cols()); }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    if (x.size() != mean.size()) throw Error(ErrorCode::DimensionMismatch, "projection input dimension differs");
    return basis.transpose() * (x - mean);
  }
  Eigen::VectorXd project(std::span<const double> x) const {
    return project(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()))));
  }
  Eigen::VectorXd reconstruct(const Eigen::VectorXd& y) const { return mean + basis * y; }

  Eigen::MatrixXd project_all(const EmbeddingDataset& ds) const {
    Eigen::MatrixXd x = ds.matrix();
    if (x.cols() != mean.size()) throw Error(ErrorCode::DimensionMismatch, "projection input dimension differs");
    return (x.rowwise() - mean.transpose()) * basis;
  }
};

namespace detail {

/// Flips each column so its largest-magnitude entry (first on ties) is positive.
inline void apply_sign_convention(Eigen::MatrixXd& basis) {
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Eigen::Index best = 0;
    for (Eigen::Index r = 1; r < basis.rows(); ++r) {
      if (std::abs(basis(r, c)) > std::abs(basis(best, c))) best = r;
    }
    if (basis(best, c) < 0.0) basis.col(c) *= -1.0;
  }
}

struct PcaCore {
  Eigen::VectorXd mean;
  Eigen::MatrixXd directions;  // d x min(n, d), descending variance
  Eigen::VectorXd variances;
  Eigen::Index rank = 0;
};

inline PcaCore pca_core(const Eigen::MatrixXd& x) {
  if (x.rows() < 2) throw Error(ErrorCode::RankDeficient, "PCA needs at least two samples");
  PcaCore core;
  core.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - core.mean.transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  core.directions = svd.matrixV();
  core.variances = sv.array().square() / static_cast<double>(x.rows() - 1);
  const double tol = sv.size() ? sv(0) * static_cast<double>(std::max(x.rows(), x.cols())) * 1e-13 : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++core.rank;
  }
  return core;
}

}  // namespace detail

/// Top-k principal directions of the mean-centred data.
inline ProjectionModel pca_fit(const EmbeddingDataset& ds, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (ds.samples.empty()) throw Error(ErrorCode::EmptySample, "no samples");
  auto core = detail::pca_core(ds.matrix());
  if (static_cast<Eigen::Index>(k) > core.rank) {
    throw Error(ErrorCode::RankDeficient,
                "k = " + std::to_string(k) + " exceeds data rank " + std::to_string(core.rank));
  }
  ProjectionModel m;
  m.kind = ProjectionKind::Pca;
  m.mean = core.mean;
  m.basis = core.directions.leftCols(static_cast<Eigen::Index>(k));
  detail::apply_sign_convention(m.basis);
  m.explained_variance.assign(core.variances.data(), core.variances.data() + core.variances.size());
  return m;
}

/// PCA to min(pre_pca_k, rank) dims, then Fisher LDA with a ridge of
/// 1e-6 * trace(Sw)/dim on the within-class scatter. Discriminant directions
/// are orthonormalised in eigenvalue order so the composed basis stays orthonormal.
inline ProjectionModel lda_fit(const EmbeddingDataset& ds, std::size_t pre_pca_k = 128, std::size_t out_dims = 2) {
  if (ds.classes.size() < 2) throw Error(ErrorCode::InvalidArgument, "LDA needs at least two classes");
  if (out_dims == 0 || out_dims > ds.classes.size() - 1) {
    throw Error(ErrorCode::InvalidArgument, "out_dims must be in [1, classes - 1] = [1, " +
                                                std::to_string(ds.classes.size() - 1) + "]");
  }
  if (pre_pca_k == 0) throw Error(ErrorCode::InvalidArgument, "pre_pca_k must be positive");
  const Eigen::MatrixXd x = ds.matrix();
  auto core = detail::pca_core(x);
  const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(pre_pca_k), core.rank);
  if (k < static_cast<Eigen::Index>(out_dims)) {
    throw Error(ErrorCode::RankDeficient, "data rank too small for the requested output dimensions");
  }
  const Eigen::MatrixXd p = core.directions.leftCols(k);
  const Eigen::MatrixXd z = (x.rowwise() - core.mean.transpose()) * p;  // mean of z is 0

  std::map<std::string, std::size_t> class_index;
  for (std::size_t c = 0; c < ds.classes.size(); ++c) class_index[ds.classes[c]] = c;
  const auto n_classes = static_cast<Eigen::Index>(ds.classes.size());
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(n_classes, k);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_classes);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const auto c = static_cast<Eigen::Index>(class_index.at(ds.samples[static_cast<std::size_t>(i)].label));
    means.row(c) += z.row(i);
    counts(c) += 1.0;
  }
  for (Eigen::Index c = 0; c < n_classes; ++c) means.row(c) /= counts(c);

  Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const auto c = static_cast<Eigen::Index>(class_index.at(ds.samples[static_cast<std::size_t>(i)].label));
    const Eigen::RowVectorXd d = z.row(i) - means.row(c);
    sw.noalias() += d.transpose() * d;
  }
  Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index c = 0; c < n_classes; ++c) sb.noalias() += counts(c) * means.row(c).transpose() * means.row(c);

  double eps = 1e-6 * sw.trace() / static_cast<double>(k);
  if (!(eps > 0.0)) eps = 1e-6;
  sw.diagonal().array() += eps;

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(sb, sw);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::SingularScatter, "within-class scatter solve failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& evecs = solver.eigenvectors();

  Eigen::MatrixXd w(k, static_cast<Eigen::Index>(out_dims));
  std::vector<double> kept;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(out_dims); ++j) {
    const Eigen::Index src = k - 1 - j;
    Eigen::VectorXd v = evecs.col(src);
    for (Eigen::Index q = 0; q < j; ++q) v -= w.col(q).dot(v) * w.col(q);
    const double norm = v.norm();
    if (!(norm > 1e-12)) throw Error(ErrorCode::SingularScatter, "degenerate discriminant direction");
    w.col(j) = v / norm;
    kept.push_back(evals(src));
  }

  ProjectionModel m;
  m.kind = ProjectionKind::PcaThenLda;
  m.mean = core.mean;
  m.basis = p * w;
  detail::apply_sign_convention(m.basis);
  m.explained_variance = kept;
  m.pre_pca_dims = static_cast<std::size_t>(k);
  m.low_discrimination = !(kept.front() >= 1e-6);
  return m;
}

// ---------------------------------------------------------------------------
// Energy distance
// ---------------------------------------------------------------------------

namespace detail {

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Sum of all pairwise distances, accumulated per row and then in row order so
// the result does not depend on `jobs`.
inline double pair_sum(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b, std::size_t jobs) {
  std::vector<double> rows(a.size(), 0.0);
  parallel_for(a.size(), jobs, [&](std::size_t i) {
    double s = 0.0;
    for (const auto& y : b) s += euclid(a[i], y);
    rows[i] = s;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

}  // namespace detail

/// Sample energy distance
///   (2/mn) sum ||x_i - y_j|| - (1/m^2) sum ||x_i - x_k|| - (1/n^2) sum ||y_j - y_l||.
/// The arguments are put in a canonical order first, so D(X,Y) and D(Y,X)
/// perform the same floating-point operations.
inline double energy_distance(std::span<const std::vector<double>> x, std::span<const std::vector<double>> y,
                              std::size_t jobs = 1) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::EmptySample, "energy distance needs non-empty samples");
  const std::size_t d = x.front().size();
  for (const auto* set : {&x, &y}) {
    for (const auto& v : *set) {
      if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "energy distance samples differ in dimension");
    }
  }
  if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) std::swap(x, y);
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double sxy = detail::pair_sum(x, y, jobs);
  const double sxx = detail::pair_sum(x, x, jobs);
  const double syy = detail::pair_sum(y, y, jobs);
  const double e = (2.0 * sxy) / (m * n) - (sxx / (m * m) + syy / (n * n));
  return std::max(0.0, e);
}

inline double energy_distance(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
                              std::size_t jobs = 1) {
  return energy_distance(std::span<const std::vector<double>>(x), std::span<const std::vector<double>>(y), jobs);
}

struct DistanceMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<double>> values;
};

inline DistanceMatrix class_distance_matrix(const EmbeddingDataset& ds, std::size_t jobs = 1) {
  if (ds.classes.size() < 2) throw Error(ErrorCode::InvalidArgument, "distance matrix needs at least two classes");
  DistanceMatrix out;
  out.classes = ds.classes;
  const std::size_t c = ds.classes.size();
  std::vector<std::vector<std::vector<double>>> groups;
  for (const auto& label : ds.classes) groups.push_back(ds.class_vectors(label));
  out.values.assign(c, std::vector<double>(c, 0.0));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i; j < c; ++j) {
      out.values[i][j] = energy_distance(groups[i], groups[j], jobs);
      out.values[j][i] = out.values[i][j];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV I/O
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Reads `label,v0,...,v{d-1}` CSV.
inline EmbeddingDataset read_embedding_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  const auto header = detail::split_csv_line(line);
  if (header.size() < 2 || header[0] != "label") throw ParseError(1, "header must be label,v0,v1,...");
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] != "v" + std::to_string(i - 1)) throw ParseError(1, "unexpected column '" + header[i] + "'");
  }
  const std::size_t d = header.size() - 1;
  EmbeddingDataset ds;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != d + 1) throw ParseError(line_no, "expected " + std::to_string(d + 1) + " fields");
    if (cells[0].empty()) throw ParseError(line_no, "empty label");
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& cell = cells[i + 1];
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v[i]);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v[i])) {
        throw ParseError(line_no, "bad number '" + cell + "'");
      }
    }
    ds.add(cells[0], std::move(v));
  }
  if (ds.samples.empty()) throw Error(ErrorCode::EmptySample, "embedding file has no samples");
  return ds;
}

inline void write_projection_csv(const EmbeddingDataset& ds, const ProjectionModel& model, std::ostream& out) {
  const Eigen::MatrixXd y = model.project_all(ds);
  out << "label";
  for (Eigen::Index j = 0; j < y.cols(); ++j) out << ",p" << j;
  out << "\n";
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    out << ds.samples[static_cast<std::size_t>(i)].label;
    for (Eigen::Index j = 0; j < y.cols(); ++j) out << "," << detail::fmt_double(y(i, j));
    out << "\n";
  }
}

inline void write_matrix_csv(const DistanceMatrix& m, std::ostream& out) {
  out << "class";
  for (const auto& c : m.classes) out << "," << c;
  out << "\n";
  for (std::size_t i = 0; i < m.classes.size(); ++i) {
    out << m.classes[i];
    for (double v : m.values[i]) out << "," << detail::fmt_double(v);
    out << "\n";
  }
}

}  // namespace spacer
