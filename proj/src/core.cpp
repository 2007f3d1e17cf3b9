#include "lambdahull/core.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace lambdahull {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::EmptyBody: return "EmptyBody";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::HemisphereViolation: return "HemisphereViolation";
    case ErrorCode::DegenerateCell: return "DegenerateCell";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::EmptyEstimate: return "EmptyEstimate";
    case ErrorCode::RejectionExhausted: return "RejectionExhausted";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

double kappa(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidParam, "kappa of negative dimension");
  return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

Vec zero_vec(int n) { return Vec::Zero(n); }

Vec unit_vec(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

Mat random_rotation(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x5107);
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

Vec CounterRng::on_sphere(int n) {
  Vec v(n);
  double nrm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v(i) = normal();
    nrm = v.norm();
  } while (nrm < 1e-12);
  return v / nrm;
}

int worker_count() {
  if (const char* env = std::getenv("LAMBDAHULL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lambdahull
