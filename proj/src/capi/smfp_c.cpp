// Copyright 2026 The smfp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "smfp/smfp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "core/generators.hpp"
#include "core/operators.hpp"
#include "core/structure.hpp"
#include "core/suites.hpp"

struct smfp_series {
  smfp::AnySeries value;
};

namespace {

thread_local std::string g_last_error;

smfp_status to_status(smfp::ErrorCode code) {
  using smfp::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SMFP_ERR_INVALID_ARGUMENT;
    case ErrorCode::WeightMismatch: return SMFP_ERR_WEIGHT_MISMATCH;
    case ErrorCode::NonIntegralAtP: return SMFP_ERR_NON_INTEGRAL_AT_P;
    case ErrorCode::InsufficientPrecision: return SMFP_ERR_INSUFFICIENT_PRECISION;
    case ErrorCode::ParseError: return SMFP_ERR_PARSE;
    case ErrorCode::DomainMismatch: return SMFP_ERR_DOMAIN_MISMATCH;
    case ErrorCode::OddCharacteristic: return SMFP_ERR_ODD_CHARACTERISTIC;
    case ErrorCode::WeightInfeasible: return SMFP_ERR_WEIGHT_INFEASIBLE;
    case ErrorCode::ScaleModulusClash: return SMFP_ERR_SCALE_MODULUS_CLASH;
    case ErrorCode::NotThetaDecomposable: return SMFP_ERR_NOT_THETA_DECOMPOSABLE;
    case ErrorCode::NoSolution: return SMFP_ERR_NO_SOLUTION;
    case ErrorCode::BernoulliOddIndex: return SMFP_ERR_BERNOULLI_ODD_INDEX;
    case ErrorCode::Overflow: return SMFP_ERR_OVERFLOW;
  }
  return SMFP_ERR_INTERNAL;
}

template <class Fn>
smfp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SMFP_OK;
  } catch (const smfp::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return SMFP_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) smfp::fail(smfp::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

smfp_series* wrap(smfp::AnySeries v) { return new smfp_series{std::move(v)}; }

const smfp::QSeries& scalar(const smfp_series* s) {
  require(s, "series");
  const auto* q = std::get_if<smfp::QSeries>(&s->value);
  if (!q) smfp::fail(smfp::ErrorCode::InvalidArgument, "expected a scalar series, got a matrix series");
  return *q;
}

std::string kind_of(const smfp::AnySeries& v) {
  if (const auto* q = std::get_if<smfp::QSeries>(&v))
    return "scalar g=" + std::to_string(q->genus()) + " " + q->domain().to_string();
  const auto& m = std::get<smfp::MatrixQSeries>(v);
  return "matrix g=" + std::to_string(m.genus()) + " Fp:" + std::to_string(m.modulus());
}

smfp::AnySeries apply_one(const smfp::AnySeries& in, const std::string& op, const smfp_op_params& prm,
                          smfp::OperatorLog& log) {
  using namespace smfp;
  auto needs_scalar = [&]() -> const QSeries& {
    const auto* q = std::get_if<QSeries>(&in);
    if (!q) fail(ErrorCode::InvalidArgument, op + " takes a scalar series");
    return *q;
  };
  auto check_p = [&](const QSeries& f) {
    if (prm.p && f.domain().is_prime_field() && f.domain().modulus() != prm.p)
      fail(ErrorCode::DomainMismatch, "series is over " + f.domain().to_string() + " but p = " + std::to_string(prm.p));
  };
  if (op == "U") {
    const auto& f = needs_scalar();
    check_p(f);
    return op_U(f, &log);
  }
  if (op == "V") {
    const auto& f = needs_scalar();
    check_p(f);
    return op_V(f, prm.cap > 0 ? std::optional<std::int64_t>(prm.cap) : std::nullopt, &log);
  }
  if (op == "phi") return op_phi(needs_scalar(), &log);
  if (op == "hecke") {
    const auto& f = needs_scalar();
    if (prm.l < 2) fail(ErrorCode::InvalidArgument, "hecke needs a prime l");
    long k = prm.k;
    if (k == 0) {
      if (!f.weight().is_integer()) fail(ErrorCode::WeightMismatch, "hecke needs an integral weight");
      k = f.weight().num();
    }
    return hecke_Tl_g1(f, prm.l, k, &log);
  }
  if (op == "cartier") {
    const auto* m = std::get_if<MatrixQSeries>(&in);
    if (!m) fail(ErrorCode::InvalidArgument, "cartier takes a matrix series");
    return cartier(*m, &log);
  }
  if (op == "thetadet") return op_theta_det(needs_scalar(), &log);
  if (op == "thetamatrix") return op_theta_matrix(needs_scalar(), &log);
  if (op == "reduce") {
    const auto& f = needs_scalar();
    if (!prm.p) fail(ErrorCode::InvalidArgument, "reduce needs p");
    if (!f.domain().is_rational()) fail(ErrorCode::DomainMismatch, "reduce takes a series over Q");
    QSeries out = reduce_series(f, prm.p);
    log = OperatorLog{"reduce", f.weight(), f.weight(), f.bound(), f.bound()};
    return out;
  }
  if (op == "fj") {
    const auto& f = needs_scalar();
    if (prm.nu < 1) fail(ErrorCode::InvalidArgument, "fj needs nu >= 1");
    QSeries out = slice_to_series(fourier_jacobi(f, prm.nu), f.bound(), f.weight());
    log = OperatorLog{"fj", f.weight(), f.weight(), f.bound(), f.bound()};
    return out;
  }
  fail(ErrorCode::InvalidArgument, "unknown operator '" + op + "'");
}

}  // namespace

extern "C" {

const char* smfp_last_error(void) { return g_last_error.c_str(); }

const char* smfp_status_name(smfp_status status) {
  switch (status) {
    case SMFP_OK: return "Ok";
    case SMFP_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SMFP_ERR_WEIGHT_MISMATCH: return "WeightMismatch";
    case SMFP_ERR_NON_INTEGRAL_AT_P: return "NonIntegralAtP";
    case SMFP_ERR_INSUFFICIENT_PRECISION: return "InsufficientPrecision";
    case SMFP_ERR_PARSE: return "ParseError";
    case SMFP_ERR_DOMAIN_MISMATCH: return "DomainMismatch";
    case SMFP_ERR_ODD_CHARACTERISTIC: return "OddCharacteristic";
    case SMFP_ERR_WEIGHT_INFEASIBLE: return "WeightInfeasible";
    case SMFP_ERR_SCALE_MODULUS_CLASH: return "ScaleModulusClash";
    case SMFP_ERR_NOT_THETA_DECOMPOSABLE: return "NotThetaDecomposable";
    case SMFP_ERR_NO_SOLUTION: return "NoSolution";
    case SMFP_ERR_BERNOULLI_ODD_INDEX: return "BernoulliOddIndex";
    case SMFP_ERR_OVERFLOW: return "Overflow";
    case SMFP_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void smfp_string_free(char* s) { std::free(s); }
void smfp_series_free(smfp_series* s) { delete s; }
const char* smfp_version(void) { return "0.1.0"; }

smfp_status smfp_gen_eisenstein(long k, int64_t bound, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::eisenstein_g1(k, bound)); });
}

smfp_status smfp_gen_delta(int64_t bound, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::delta_g1(bound)); });
}

smfp_status smfp_gen_hasse(int genus, uint32_t p, int64_t bound, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::hasse_series(genus, p, bound)); });
}

smfp_status smfp_gen_theta(const char* characteristic, int64_t bound, smfp_series** out) {
  return guarded([&] {
    require(out, "out");
    require(characteristic, "characteristic");
    *out = wrap(smfp::theta_constant_g2(smfp::ThetaCharacteristic::parse(characteristic), bound));
  });
}

smfp_status smfp_gen_chi10(int64_t bound, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::chi10_prop(bound)); });
}

smfp_status smfp_gen_psi4(int64_t bound, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::psi4_prop(bound)); });
}

smfp_status smfp_gen_theta_fa(int64_t nu, int64_t a_numerator, int derivative, int64_t bound, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::theta_fa(nu, a_numerator, derivative, bound)); });
}

smfp_status smfp_series_parse(const char* text, smfp_series** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(smfp::deserialize(text));
  });
}

smfp_status smfp_series_serialize(const smfp_series* s, char** out) {
  return guarded([&] {
    require(s, "series");
    require(out, "out");
    *out = dup_string(std::visit([](const auto& v) { return smfp::serialize(v); }, s->value));
  });
}

smfp_status smfp_series_table(const smfp_series* s, int64_t max_trace, char** out) {
  return guarded([&] {
    require(s, "series");
    require(out, "out");
    *out = dup_string(smfp::format_table(s->value, max_trace));
  });
}

smfp_status smfp_series_info_get(const smfp_series* s, smfp_series_info* out) {
  return guarded([&] {
    require(s, "series");
    require(out, "out");
    if (const auto* q = std::get_if<smfp::QSeries>(&s->value)) {
      *out = {0, q->genus(), q->domain().modulus(), q->weight().num(), q->weight().den(), q->bound(), q->scale(), q->size()};
    } else {
      const auto& m = std::get<smfp::MatrixQSeries>(s->value);
      *out = {1, m.genus(), m.modulus(), m.weight().num(), m.weight().den(), m.bound(), m.scale(), m.size()};
    }
  });
}

smfp_status smfp_series_add(const smfp_series* a, const smfp_series* b, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::add(scalar(a), scalar(b))); });
}

smfp_status smfp_series_mul(const smfp_series* a, const smfp_series* b, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::mul(scalar(a), scalar(b))); });
}

smfp_status smfp_series_pow(const smfp_series* a, unsigned n, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::pow(scalar(a), n)); });
}

smfp_status smfp_series_reduce(const smfp_series* a, uint32_t p, smfp_series** out) {
  return guarded([&] { require(out, "out"); *out = wrap(smfp::reduce_series(scalar(a), p)); });
}

smfp_status smfp_series_rescale(const smfp_series* a, int64_t d, smfp_series** out) {
  return guarded([&] {
    require(out, "out");
    const auto& f = scalar(a);
    if (d < 1 || d % f.scale() != 0)
      smfp::fail(smfp::ErrorCode::InvalidArgument, "scale " + std::to_string(d) + " is not a multiple of " + std::to_string(f.scale()));
    *out = wrap(f.rescaled(d));
  });
}

smfp_status smfp_series_eq_upto(const smfp_series* a, const smfp_series* b, int64_t bound, int* equal) {
  return guarded([&] {
    require(equal, "equal");
    *equal = smfp::eq_upto(scalar(a), scalar(b), bound) ? 1 : 0;
  });
}

smfp_status smfp_apply_pipeline(const smfp_series* in, const char* pipeline, const smfp_op_params* params,
                                smfp_series** out, char** log) {
  return guarded([&] {
    require(in, "series");
    require(pipeline, "pipeline");
    require(out, "out");
    const smfp_op_params prm = params ? *params : smfp_op_params{0, 0, 0, 0, 0};
    smfp::AnySeries cur = in->value;
    std::string prev = "input", log_text;
    std::stringstream ss(pipeline);
    std::string op;
    int step = 0;
    while (std::getline(ss, op, ',')) {
      ++step;
      if (op.empty()) smfp::fail(smfp::ErrorCode::InvalidArgument, "empty operator at step " + std::to_string(step));
      smfp::OperatorLog entry;
      try {
        cur = apply_one(cur, op, prm, entry);
      } catch (const smfp::Error& e) {
        throw smfp::Error(e.code(), "step " + std::to_string(step) + " (" + prev + " -> " + op + ") on " + kind_of(cur) +
                                        ": " + e.what());
      }
      log_text += "step=" + std::to_string(step) + " " + entry.to_string() + '\n';
      prev = op;
    }
    if (step == 0) smfp::fail(smfp::ErrorCode::InvalidArgument, "empty pipeline");
    *out = wrap(std::move(cur));
    if (log) *log = dup_string(log_text);
  });
}

smfp_status smfp_is_p_singular(const smfp_series* f, int* result) {
  return guarded([&] {
    require(result, "result");
    *result = smfp::is_p_singular(scalar(f)) ? 1 : 0;
  });
}

smfp_status smfp_p_root(const smfp_series* f, long k, long* r, long* kprime, smfp_series** h) {
  return guarded([&] {
    require(r, "r");
    require(kprime, "kprime");
    require(h, "h");
    smfp::PRoot root = smfp::p_root(scalar(f), k);
    *r = root.r;
    *kprime = root.kprime;
    *h = wrap(std::move(root.h));
  });
}

smfp_status smfp_verify(const char* suite, int has_p, uint32_t p, int has_bound, int64_t bound, uint64_t seed,
                        char** report, int* passed) {
  return guarded([&] {
    require(suite, "suite");
    require(report, "report");
    require(passed, "passed");
    smfp::SuiteOptions opt;
    if (has_p) opt.p = p;
    if (has_bound) opt.bound = bound;
    opt.seed = seed;
    const smfp::Report rep = smfp::run_suite(suite, opt);
    *report = dup_string(rep.to_string());
    *passed = rep.passed() ? 1 : 0;
  });
}

const char* smfp_suite_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : smfp::suite_names()) s += n + '\n';
    return s;
  }();
  return names.c_str();
}

}  // extern "C"
