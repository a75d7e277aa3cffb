#include "seirq/seirq.h"

#include <cstring>
#include <exception>
#include <span>
#include <string>

#include "seirq/calibration.hpp"
#include "seirq/errors.hpp"
#include "seirq/model.hpp"
#include "seirq/qso.hpp"
#include "seirq/spectral.hpp"
#include "seirq/trajectory.hpp"

struct seirq_trajectory {
  seirq::Trajectory impl;
};

struct seirq_tensor {
  seirq::QsoTensor impl;
};

struct seirq_fit_result {
  seirq::FitResult impl;
};

namespace {

thread_local std::string g_last_error;

seirq::Params to_cpp(const seirq_params& p) { return {p.beta, p.q, p.a, p.b}; }
seirq::SimplexState to_cpp(const seirq_state& x) { return {x.s, x.e, x.i, x.r}; }
seirq_state to_c(const seirq::SimplexState& x) { return {x.s, x.e, x.i, x.r}; }

seirq::CalibrationTarget to_cpp(const seirq_target& t) {
  seirq::CalibrationTarget out;
  out.x0 = to_cpp(t.x0);
  out.peak_day = t.peak_day;
  out.population = t.population;
  if (t.has_completion_day) out.completion_day = t.completion_day;
  return out;
}

seirq_status record(seirq_status st, const char* what) {
  g_last_error = what;
  return st;
}

// Runs f, translating the exception hierarchy into status codes. Exact
// types are matched before their std bases.
template <typename F>
seirq_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SEIRQ_OK;
  } catch (const seirq::ParamError& e) {
    return record(SEIRQ_ERR_INADMISSIBLE, e.what());
  } catch (const seirq::DegenerateWindow& e) {
    return record(SEIRQ_ERR_DEGENERATE, e.what());
  } catch (const seirq::DomainError& e) {
    return record(SEIRQ_ERR_DOMAIN, e.what());
  } catch (const seirq::ConfigError& e) {
    return record(SEIRQ_ERR_CONFIG, e.what());
  } catch (const seirq::InvalidInput& e) {
    return record(SEIRQ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return record(SEIRQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(SEIRQ_ERR_INTERNAL, "unknown error");
  }
}

bool all_present() { return true; }

template <typename T, typename... Ts>
bool all_present(const T* p, const Ts*... rest) {
  return p != nullptr && all_present(rest...);
}

// Shared guard for NULL pointer arguments.
template <typename... Ts>
bool null_args(const Ts*... ptrs) {
  if (all_present(ptrs...)) return false;
  g_last_error = "null pointer argument";
  return true;
}

void copy_out(const std::string& src, char* buf, size_t cap) {
  if (!buf || cap == 0) return;
  const size_t n = src.size() < cap - 1 ? src.size() : cap - 1;
  std::memcpy(buf, src.data(), n);
  buf[n] = '\0';
}

}  // namespace

extern "C" {

const char* seirq_status_name(seirq_status st) {
  switch (st) {
    case SEIRQ_OK: return "ok";
    case SEIRQ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SEIRQ_ERR_INADMISSIBLE: return "inadmissible parameters";
    case SEIRQ_ERR_DOMAIN: return "domain error";
    case SEIRQ_ERR_DEGENERATE: return "degenerate window";
    case SEIRQ_ERR_CONFIG: return "configuration error";
    case SEIRQ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* seirq_last_error(void) { return g_last_error.c_str(); }

const char* seirq_version(void) { return "0.1.0"; }

int seirq_params_validate(const seirq_params* p, char* msg, size_t cap) {
  if (msg && cap > 0) msg[0] = '\0';
  if (!p) {
    g_last_error = "null pointer argument";
    return -1;
  }
  try {
    const seirq::ParamCheck check = seirq::validate_params(to_cpp(*p));
    copy_out(check.joined(), msg, cap);
    return static_cast<int>(check.violations.size());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    copy_out(g_last_error, msg, cap);
    return -1;
  }
}

seirq_status seirq_step(const seirq_params* p, const seirq_state* x,
                        seirq_state* out) {
  if (null_args(p, x, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = to_c(seirq::step(to_cpp(*x), to_cpp(*p))); });
}

seirq_status seirq_simulate(const seirq_params* p, const seirq_state* x0,
                            long steps, seirq_trajectory** out) {
  if (null_args(p, x0, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new seirq_trajectory{
        seirq::simulate(to_cpp(*x0), to_cpp(*p), steps)};
  });
}

void seirq_trajectory_free(seirq_trajectory* t) { delete t; }

long seirq_trajectory_days(const seirq_trajectory* t) {
  return t ? static_cast<long>(t->impl.days()) : -1;
}

seirq_status seirq_trajectory_state(const seirq_trajectory* t, long day,
                                    seirq_state* out) {
  if (null_args(t, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (day < 0 || static_cast<std::size_t>(day) >= t->impl.states().size())
      throw seirq::DomainError("day " + std::to_string(day) +
                               " outside the trajectory (days = " +
                               std::to_string(t->impl.days()) + ")");
    *out = to_c(t->impl.states()[static_cast<std::size_t>(day)]);
  });
}

seirq_status seirq_trajectory_diag(const seirq_trajectory* t, long day,
                                   seirq_step_diag* out) {
  if (null_args(t, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (day < 0 || static_cast<std::size_t>(day) >= t->impl.states().size())
      throw seirq::DomainError("day " + std::to_string(day) +
                               " outside the trajectory (days = " +
                               std::to_string(t->impl.days()) + ")");
    const seirq::StepDiag& d =
        t->impl.diagnostics()[static_cast<std::size_t>(day)];
    *out = {d.e_decline, d.i_decline, d.in_decay ? 1 : 0};
  });
}

seirq_status seirq_trajectory_peak(const seirq_trajectory* t, long* day,
                                   double* infectious) {
  if (null_args(t, day, infectious)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const seirq::Peak pk = seirq::peak(t->impl);
    *day = pk.day;
    *infectious = pk.infectious;
  });
}

seirq_status seirq_trajectory_completion_day(const seirq_trajectory* t,
                                             double threshold, long* day) {
  if (null_args(t, day)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const std::optional<long> d = seirq::completion_day(t->impl, threshold);
    *day = d ? *d : -1;
  });
}

seirq_status seirq_trajectory_decay_entry_day(const seirq_trajectory* t,
                                              long* day) {
  if (null_args(t, day)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const std::optional<long> d = seirq::decay_entry_day(t->impl);
    *day = d ? *d : -1;
  });
}

seirq_status seirq_trajectory_recurrence_residual(const seirq_trajectory* t,
                                                  double* out) {
  if (null_args(t, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = seirq::max_recurrence_residual(t->impl); });
}

seirq_status seirq_find_limit(const seirq_params* p, const seirq_state* x0,
                              double tol, long max_iter,
                              seirq_limit_report* out) {
  if (null_args(p, x0, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const double use_tol = tol > 0.0 ? tol : seirq::kLimitTol;
    const long use_iter = max_iter > 0 ? max_iter : seirq::kLimitMaxIter;
    const seirq::LimitReport rep =
        seirq::find_limit(to_cpp(*x0), to_cpp(*p), use_tol, use_iter);
    out->limit = to_c(rep.limit);
    out->iterations = rep.iterations;
    out->converged = rep.converged ? 1 : 0;
    out->residual_ei = rep.residual_ei;
    out->residual_ds = rep.residual_ds;
    out->bound_applicable = rep.bound_applicable ? 1 : 0;
    out->bound_ok = rep.bound_ok ? 1 : 0;
    out->critical = rep.critical;
  });
}

seirq_status seirq_decay_entry_day(const seirq_params* p,
                                   const seirq_state* x0, long max_iter,
                                   seirq_decay_result* result, long* day) {
  if (null_args(p, x0, result, day)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const seirq::DecayEntry entry =
        seirq::decay_entry_day(to_cpp(*x0), to_cpp(*p), max_iter);
    switch (entry.status) {
      case seirq::DecayEntry::Status::found:
        *result = SEIRQ_DECAY_FOUND;
        *day = entry.day;
        break;
      case seirq::DecayEntry::Status::not_found:
        *result = SEIRQ_DECAY_NOT_FOUND;
        break;
      case seirq::DecayEntry::Status::not_applicable:
        *result = SEIRQ_DECAY_NOT_APPLICABLE;
        break;
    }
  });
}

const char* seirq_regime_name(int regime) {
  if (regime < 0 || regime > 3) return "unknown";
  return seirq::regime_name(static_cast<seirq::Regime>(regime));
}

seirq_status seirq_spectral(const seirq_params* p, double alpha,
                            seirq_spectral_report* out) {
  if (null_args(p, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const seirq::SpectralReport rep = seirq::classify(alpha, to_cpp(*p));
    out->alpha = rep.alpha;
    out->mu1 = rep.mu.mu1;
    out->mu2 = rep.mu.mu2;
    out->mu3 = rep.mu.mu3;
    out->discriminant = rep.mu.discriminant;
    out->critical = rep.critical;
    out->regime = static_cast<int>(rep.regime);
    out->dim_stable = rep.dim_stable;
    out->dim_center = rep.dim_center;
    out->dim_unstable = rep.dim_unstable;
    out->hyperbolic = rep.hyperbolic ? 1 : 0;
  });
}

seirq_status seirq_critical_alpha(const seirq_params* p, double* out) {
  if (null_args(p, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = seirq::critical_alpha(to_cpp(*p)); });
}

seirq_status seirq_tensor_build(const seirq_params* p, seirq_tensor** out) {
  if (null_args(p, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = new seirq_tensor{seirq::build_tensor(to_cpp(*p))}; });
}

void seirq_tensor_free(seirq_tensor* t) { delete t; }

seirq_status seirq_tensor_get(const seirq_tensor* t, int i, int j, int k,
                              double* out) {
  if (null_args(t, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = t->impl.at(i, j, k); });
}

seirq_status seirq_tensor_apply(const seirq_tensor* t, const seirq_state* x,
                                seirq_state* out) {
  if (null_args(t, x, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = to_c(seirq::apply(t->impl, to_cpp(*x))); });
}

seirq_status seirq_tensor_verify(const seirq_tensor* t, double tol,
                                 seirq_tensor_report* out) {
  if (null_args(t, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const seirq::TensorCheck check =
        seirq::verify_tensor(t->impl, tol > 0.0 ? tol : 1e-12);
    out->symmetry_ok = check.symmetry_ok ? 1 : 0;
    out->nonneg_ok = check.nonneg_ok ? 1 : 0;
    out->stochastic_ok = check.stochastic_ok ? 1 : 0;
    out->worst_symmetry = check.symmetry.worst;
    out->worst_negativity = check.negativity.worst;
    out->worst_stochastic = check.stochastic.worst;
  });
}

seirq_status seirq_tensor_format(const seirq_tensor* t, char* buf, size_t cap,
                                 size_t* needed) {
  if (null_args(t, needed)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const std::string text = seirq::format_tensor(t->impl);
    *needed = text.size() + 1;
    copy_out(text, buf, cap);
  });
}

seirq_status seirq_reconstruct(const seirq_params* p, const double v[4],
                               double* s, double* e, double* i) {
  if (null_args(p, v, s, e, i)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const seirq::Reconstruction rec =
        seirq::reconstruct_from_v({v[0], v[1], v[2], v[3]}, to_cpp(*p));
    *s = rec.s;
    *e = rec.e;
    *i = rec.i;
  });
}

seirq_status seirq_recurrence_rhs(const seirq_params* p, double v0, double v1,
                                  double v2, double* out) {
  if (null_args(p, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    seirq::require_admissible(to_cpp(*p));
    *out = seirq::recurrence_rhs(v0, v1, v2, to_cpp(*p));
  });
}

seirq_status seirq_recurrence_residual(const seirq_params* p, const double* v,
                                       size_t n, double* out) {
  if (null_args(p, v, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = seirq::max_recurrence_residual(std::span<const double>(v, n),
                                          to_cpp(*p));
  });
}

seirq_search_box seirq_default_search_box(void) {
  const seirq::SearchBox box = seirq::default_search_box();
  return {{box.a.lo, box.a.hi, box.a.points},
          {box.b.lo, box.b.hi, box.b.points},
          {box.beta.lo, box.beta.hi, box.beta.points},
          {box.q.lo, box.q.hi, box.q.points}};
}

seirq_status seirq_objective(const seirq_params* p, const seirq_target* t,
                             double* loss) {
  if (null_args(p, t, loss)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { *loss = seirq::objective(to_cpp(*p), to_cpp(*t)); });
}

seirq_status seirq_fit(const seirq_search_box* box, const seirq_target* t,
                       seirq_fit_result** out) {
  if (null_args(box, t, out)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const seirq::SearchBox b{{box->a.lo, box->a.hi, box->a.points},
                             {box->b.lo, box->b.hi, box->b.points},
                             {box->beta.lo, box->beta.hi, box->beta.points},
                             {box->q.lo, box->q.hi, box->q.points}};
    *out = new seirq_fit_result{seirq::grid_search(b, to_cpp(*t))};
  });
}

void seirq_fit_result_free(seirq_fit_result* r) { delete r; }

long seirq_fit_result_size(const seirq_fit_result* r) {
  return r ? static_cast<long>(r->impl.ranked.size()) : -1;
}

long seirq_fit_result_evaluations(const seirq_fit_result* r) {
  return r ? r->impl.evaluations : -1;
}

seirq_status seirq_fit_result_entry(const seirq_fit_result* r, long rank,
                                    seirq_params* params, double* loss) {
  if (null_args(r, params, loss)) return SEIRQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (rank < 0 || static_cast<std::size_t>(rank) >= r->impl.ranked.size())
      throw seirq::DomainError("rank " + std::to_string(rank) +
                               " outside the ranked list (size = " +
                               std::to_string(r->impl.ranked.size()) + ")");
    const seirq::ScoredParams& sp =
        r->impl.ranked[static_cast<std::size_t>(rank)];
    *params = {sp.params.beta, sp.params.q, sp.params.a, sp.params.b};
    *loss = sp.loss;
  });
}

}  // extern "C"
