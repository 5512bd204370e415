#include "wedgelab/builtins.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace wedgelab {

using json = nlohmann::ordered_json;

MatrixXd realify(const Eigen::MatrixXcd& z) {
  const int n = static_cast<int>(z.rows());
  MatrixXd r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = z.real();
  r.topRightCorner(n, n) = -z.imag();
  r.bottomLeftCorner(n, n) = z.imag();
  r.bottomRightCorner(n, n) = z.real();
  return r;
}

AlgebraPtr sl2() {
  MatrixXd h(2, 2), e(2, 2), f(2, 2);
  h << 0.5, 0, 0, -0.5;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  return LieAlgebra::make("sl2", {h, e, f});
}

namespace {

// Basis X_{ij} = eta_ii E_ij - eta_jj E_ji of so(p,q), boosts listed first.
AlgebraPtr so_pq(const std::string& name, const VectorXd& eta,
                 const std::vector<std::pair<int, int>>& order) {
  const int n = static_cast<int>(eta.size());
  std::vector<MatrixXd> basis;
  for (auto [i, j] : order) {
    MatrixXd x = MatrixXd::Zero(n, n);
    x(i, j) = eta(i);
    x(j, i) = -eta(j);
    basis.push_back(x);
  }
  return LieAlgebra::make(name, basis);
}

std::vector<std::pair<int, int>> index_order(const VectorXd& eta) {
  const int n = static_cast<int>(eta.size());
  std::vector<std::pair<int, int>> mixed, pure;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      (eta(i) * eta(j) < 0 ? mixed : pure).emplace_back(i, j);
  mixed.insert(mixed.end(), pure.begin(), pure.end());
  return mixed;
}

}  // namespace

AlgebraPtr so1d(int d) {
  if (d < 2) throw DomainError("so(1,d) requires d >= 2");
  VectorXd eta = -VectorXd::Ones(d + 1);
  eta(0) = 1;
  std::ostringstream name;
  name << "so1" << d;
  return so_pq(name.str(), eta, index_order(eta));
}

AlgebraPtr so2d(int d) {
  if (d < 1) throw DomainError("so(2,d) requires d >= 1");
  VectorXd eta = -VectorXd::Ones(d + 2);
  eta(0) = 1;
  eta(1) = 1;
  // put the Euler boost (0,2) first
  auto order = index_order(eta);
  for (size_t k = 0; k < order.size(); ++k)
    if (order[k] == std::make_pair(0, 2)) {
      std::swap(order[0], order[k]);
      break;
    }
  std::ostringstream name;
  name << "so2" << d;
  return so_pq(name.str(), eta, order);
}

AlgebraPtr su11_real() {
  using cd = std::complex<double>;
  Eigen::MatrixXcd k(2, 2), h(2, 2), b(2, 2);
  k << cd(0, 0.5), 0, 0, cd(0, -0.5);
  h << 0, 0.5, 0.5, 0;
  b << 0, cd(0, 0.5), cd(0, -0.5), 0;
  return LieAlgebra::make("su11", {realify(k), realify(h), realify(b)});
}

AlgebraPtr builtin_algebra(const std::string& name) {
  if (name == "sl2") return sl2();
  if (name == "su11") return su11_real();
  if (name.rfind("so1", 0) == 0 && name.size() > 3)
    return so1d(std::stoi(name.substr(3)));
  if (name.rfind("so2", 0) == 0 && name.size() > 3)
    return so2d(std::stoi(name.substr(3)));
  throw DomainError("unknown builtin algebra: " + name);
}

std::string algebra_to_json(const LieAlgebra& algebra) {
  json j;
  j["name"] = algebra.name();
  j["matrix_size"] = algebra.matrix_size();
  json basis = json::array();
  for (const auto& b : algebra.basis()) {
    json rows = json::array();
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) rows.push_back(b(r, c));
    basis.push_back(rows);
  }
  j["basis"] = basis;
  j["tolerance"] = algebra.tolerance();
  return j.dump(2);
}

AlgebraPtr algebra_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw DomainError(std::string("algebra JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("algebra JSON: top level must be an object");
  if (!j.contains("name") || !j["name"].is_string())
    throw DomainError("algebra JSON: missing string field 'name'");
  if (!j.contains("matrix_size") || !j["matrix_size"].is_number_integer())
    throw DomainError("algebra JSON: missing integer field 'matrix_size'");
  const int n = j["matrix_size"].get<int>();
  if (n <= 0) throw DomainError("algebra JSON: matrix_size must be positive");
  if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].empty())
    throw DomainError("algebra JSON: missing non-empty array field 'basis'");
  double tol = 1e-10;
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number()) throw DomainError("algebra JSON: tolerance must be a number");
    tol = j["tolerance"].get<double>();
    if (tol < 0) throw DomainError("algebra JSON: tolerance must be non-negative");
  }
  std::vector<MatrixXd> basis;
  int idx = 0;
  for (const auto& entry : j["basis"]) {
    if (!entry.is_array() || static_cast<int>(entry.size()) != n * n) {
      std::ostringstream os;
      os << "algebra JSON: basis[" << idx << "] must be a flat array of " << n * n
         << " reals (row-major)";
      throw DomainError(os.str());
    }
    MatrixXd m(n, n);
    int k = 0;
    for (const auto& v : entry) {
      if (!v.is_number()) throw DomainError("algebra JSON: basis entries must be numbers");
      m(k / n, k % n) = v.get<double>();
      ++k;
    }
    basis.push_back(m);
    ++idx;
  }
  return LieAlgebra::make(j["name"].get<std::string>(), basis, tol);
}

AlgebraPtr algebra_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open algebra file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return algebra_from_json(os.str());
}

}  // namespace wedgelab
