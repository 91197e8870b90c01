#include "spherewf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spherewf/errors.hpp"

namespace spherewf {

SkewIncrements::SkewIncrements(int k) : k_(k) {
  if (k < 2) throw DomainError("SkewIncrements: k must be >= 2");
  lower_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k - 1) / 2, 0.0);
}

double SkewIncrements::db(int i, int j) const noexcept {
  if (i == j) return 0.0;
  return i > j ? lower_[index(i, j)] : -lower_[index(j, i)];
}

void SkewIncrements::draw(double dt, Rng& rng, std::normal_distribution<double>& normal) {
  const double sd = std::sqrt(dt);
  for (double& v : lower_) v = sd * normal(rng);
}

SkewIncrements draw_skew(int k, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw DomainError("draw_skew: dt must be positive");
  SkewIncrements out(k);
  std::normal_distribution<double> normal(0.0, 1.0);
  out.draw(dt, rng, normal);
  return out;
}

std::string_view model_name(Model m) noexcept {
  switch (m) {
    case Model::Sphere:
      return "sphere";
    case Model::WFNeutral:
      return "wf-neutral";
    case Model::WFMutation:
      return "wf-mutation";
    case Model::WFIsotropic:
      return "wf-isotropic";
  }
  return "unknown";
}

std::optional<Model> parse_model(std::string_view name) noexcept {
  for (Model m : {Model::Sphere, Model::WFNeutral, Model::WFMutation, Model::WFIsotropic}) {
    if (model_name(m) == name) return m;
  }
  return std::nullopt;
}

void sphere_increment(std::span<const double> y, double dt, double c, const SkewIncrements& db,
                      std::span<double> dy) {
  const int k = db.k();
  const double drift = -(c * c / 8.0) * (k - 1) * dt;
  for (int i = 0; i < k; ++i) dy[static_cast<std::size_t>(i)] = drift * y[static_cast<std::size_t>(i)];
  const double half_c = 0.5 * c;
  const auto lower = db.lower();
  for (int i = 1; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      const double u = half_c * lower[SkewIncrements::index(i, j)];
      dy[static_cast<std::size_t>(i)] += u * y[static_cast<std::size_t>(j)];
      dy[static_cast<std::size_t>(j)] -= u * y[static_cast<std::size_t>(i)];
    }
  }
}

double sphere_step_inplace(std::span<double> y, double dt, double c, const SkewIncrements& db) {
  // k <= 20 everywhere in this library; a fixed buffer keeps the hot loop allocation-free.
  double dy[32];
  const int k = db.k();
  if (k > 32) throw DomainError("sphere_step_inplace: k > 32 not supported");
  sphere_increment(y, dt, c, db, std::span<double>(dy, static_cast<std::size_t>(k)));
  double norm2 = 0.0;
  for (int i = 0; i < k; ++i) {
    y[static_cast<std::size_t>(i)] += dy[i];
    norm2 += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : y) v *= inv;
  return std::abs(norm2 - 1.0);
}

SimplexStepInfo simplex_step_inplace(Model model, std::span<double> x, double dt, const ModelParams& params,
                                     const SkewIncrements& db) {
  const int k = db.k();
  if (k > 32) throw DomainError("simplex_step_inplace: k > 32 not supported");
  double dx[32];
  double noise_scale = params.c();
  switch (model) {
    case Model::WFNeutral:
      for (int i = 0; i < k; ++i) dx[i] = 0.0;
      break;
    case Model::WFIsotropic: {
      const double a = params.c() * params.c() / 4.0 * dt;
      for (int i = 0; i < k; ++i) dx[i] = a * (1.0 - k * x[static_cast<std::size_t>(i)]);
      break;
    }
    case Model::WFMutation:
      noise_scale = 1.0;
      for (int i = 0; i < k; ++i) dx[i] = 0.5 * params.drift(i, x) * dt;
      break;
    case Model::Sphere:
      throw DomainError("simplex_step_inplace: sphere model is not a simplex model");
  }

  const auto lower = db.lower();
  for (int i = 1; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      const double v =
          noise_scale * std::sqrt(x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]) *
          lower[SkewIncrements::index(i, j)];
      dx[i] += v;
      dx[j] -= v;
    }
  }

  SimplexStepInfo info;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    double& xi = x[static_cast<std::size_t>(i)];
    xi += dx[i];
    sum += xi;
  }
  info.sum_defect = std::abs(sum - 1.0);
  if (std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0; })) {
    info.clamped = true;
    sum = 0.0;
    for (double& v : x) {
      v = std::max(v, 0.0);
      sum += v;
    }
  }
  for (double& v : x) v /= sum;
  return info;
}

namespace {

void check_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("step: dt must be positive");
}

std::vector<double> validated_start(Model model, std::span<const double> start, const ModelParams& params) {
  if (static_cast<int>(start.size()) != params.k()) {
    throw DomainError("simulate: start has " + std::to_string(start.size()) + " coordinates, expected k = " +
                      std::to_string(params.k()));
  }
  std::vector<double> v(start.begin(), start.end());
  if (model == Model::Sphere) return SpherePoint(std::move(v)).vec();
  return SimplexPoint(std::move(v)).vec();
}

// Drives `model` over [0, T]; on_step(step_index, time, state, defect, clamped)
// is called after every step.
template <class OnStep>
PathDiagnostics run_steps(Model model, std::vector<double>& state, double T, double dt, const ModelParams& params,
                          Rng& rng, OnStep&& on_step) {
  const std::int64_t n = step_count(T, dt);
  SkewIncrements db(params.k());
  std::normal_distribution<double> normal(0.0, 1.0);
  PathDiagnostics diag;
  double defect_sum = 0.0;
  for (std::int64_t s = 1; s <= n; ++s) {
    const double h = (s == n) ? T - static_cast<double>(n - 1) * dt : dt;
    db.draw(h, rng, normal);
    double defect = 0.0;
    bool clamped = false;
    if (model == Model::Sphere) {
      defect = sphere_step_inplace(state, h, params.c(), db);
    } else {
      const SimplexStepInfo info = simplex_step_inplace(model, state, h, params, db);
      defect = info.sum_defect;
      clamped = info.clamped;
    }
    defect_sum += defect;
    diag.max_defect = std::max(diag.max_defect, defect);
    if (clamped) ++diag.clamp_count;
    on_step(s, s == n ? T : static_cast<double>(s) * dt, state, defect, clamped);
  }
  diag.steps = n;
  diag.mean_defect = n > 0 ? defect_sum / static_cast<double>(n) : 0.0;
  return diag;
}

}  // namespace

SphereStep step_sphere(const SpherePoint& y, double dt, double c, Rng& rng) {
  check_step(dt);
  if (!(c > 0.0)) throw DomainError("step_sphere: c must be positive");
  const SkewIncrements db = draw_skew(y.dim(), dt, rng);
  std::vector<double> v = y.vec();
  const double defect = sphere_step_inplace(v, dt, c, db);
  return {SpherePoint(std::move(v)), defect};
}

namespace {

SimplexStep simplex_value_step(Model model, const SimplexPoint& x, double dt, const ModelParams& params, Rng& rng) {
  check_step(dt);
  if (params.k() != x.dim()) throw DomainError("step: parameter k does not match the point");
  const SkewIncrements db = draw_skew(x.dim(), dt, rng);
  std::vector<double> v = x.vec();
  const SimplexStepInfo info = simplex_step_inplace(model, v, dt, params, db);
  return {SimplexPoint(std::move(v)), info.clamped, info.sum_defect};
}

}  // namespace

SimplexStep step_wf_neutral(const SimplexPoint& x, double dt, double c, Rng& rng) {
  return simplex_value_step(Model::WFNeutral, x, dt, ModelParams(x.dim(), c, 0.0), rng);
}

SimplexStep step_wf_mutation(const SimplexPoint& x, double dt, const ModelParams& params, Rng& rng) {
  return simplex_value_step(Model::WFMutation, x, dt, params, rng);
}

SimplexStep step_wf_isotropic(const SimplexPoint& x, double dt, double c, Rng& rng) {
  return simplex_value_step(Model::WFIsotropic, x, dt, ModelParams(x.dim(), c, 0.5), rng);
}

std::int64_t step_count(double T, double dt) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("simulate: T must be positive");
  check_step(dt);
  if (dt > T * (1.0 + 1e-12)) throw DomainError("simulate: dt must not exceed T");
  const auto n = static_cast<std::int64_t>(std::ceil(T / dt - 1e-9));
  return std::max<std::int64_t>(n, 1);
}

PathRecord simulate_path(Model model, std::span<const double> start, double T, double dt, const ModelParams& params,
                         Rng& rng, int stride) {
  if (stride < 1) throw DomainError("simulate_path: stride must be >= 1");
  std::vector<double> state = validated_start(model, start, params);
  PathRecord rec;
  rec.model = model;
  rec.times.push_back(0.0);
  rec.states.push_back(state);
  rec.defects.push_back(0.0);
  rec.clamped.push_back(0);
  const std::int64_t n = step_count(T, dt);
  int clamps_since_record = 0;
  rec.diagnostics = run_steps(model, state, T, dt, params, rng,
                              [&](std::int64_t s, double t, const std::vector<double>& x, double defect, bool clamped) {
                                if (clamped) ++clamps_since_record;
                                if (s % stride == 0 || s == n) {
                                  rec.times.push_back(t);
                                  rec.states.push_back(x);
                                  rec.defects.push_back(defect);
                                  rec.clamped.push_back(clamps_since_record);
                                  clamps_since_record = 0;
                                }
                              });
  return rec;
}

std::vector<double> simulate_terminal(Model model, std::span<const double> start, double T, double dt,
                                      const ModelParams& params, Rng& rng, PathDiagnostics* diagnostics) {
  std::vector<double> state = validated_start(model, start, params);
  const PathDiagnostics diag =
      run_steps(model, state, T, dt, params, rng, [](std::int64_t, double, const std::vector<double>&, double, bool) {});
  if (diagnostics != nullptr) *diagnostics = diag;
  return state;
}

}  // namespace spherewf
