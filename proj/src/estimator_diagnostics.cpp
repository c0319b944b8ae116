#include "clustergame/estimator_diagnostics.hpp"

#include "clustergame/errors.hpp"

namespace clustergame {

ErrorMoments estimator_error_moments(const GameSpec& spec, std::size_t i, std::size_t j,
                                     const JointAction& x, double sigma, std::size_t samples,
                                     CounterRng& rng) {
  if (samples == 0) throw UsageError("error moments need at least one sample");
  const auto& cluster = spec.cluster(i);
  const std::size_t n = cluster.agent_count();
  const Vector grad = local_gradient(spec, i, j, x);
  const Vector xi = spec.block(x, i);

  ErrorMoments m;
  m.samples = samples;
  Vector sum_d = Vector::Zero(static_cast<Eigen::Index>(n));
  JointAction probe = x;
  for (std::size_t s = 0; s < samples; ++s) {
    const SphereSample z = sample_unit_sphere(n, rng);
    spec.set_block(probe, i, build_query_point(xi, z, sigma, cluster));
    const GradientEstimate est =
        estimate_gradient(eval_local_cost(spec, i, j, probe), z, sigma, n);
    const double err = (est.d - grad).norm();
    m.mean_error_norm += err;
    m.mean_sq_error_norm += err * err;
    sum_d += est.d;
  }
  const double count = static_cast<double>(samples);
  m.mean_error_norm /= count;
  m.mean_sq_error_norm /= count;
  m.bias_norm = (sum_d / count - grad).norm();
  return m;
}

}  // namespace clustergame
