#include "divalg/cyclic_algebra.hpp"

#include <stdexcept>

#include "divalg/ck1.hpp"

namespace divalg {

namespace {

long ipow(long b, long e) {
  long r = 1;
  for (long k = 0; k < e; ++k) r *= b;
  return r;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// 𝔽_ℓ[t]/(f) with f monic of degree D (coefficients low to high).
struct ResidueRing {
  long ell;
  std::vector<long> f;

  std::size_t dim() const { return f.size() - 1; }

  std::vector<long> mul(const std::vector<long>& a, const std::vector<long>& b) const {
    const std::size_t d = dim();
    std::vector<long> prod(2 * d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % ell;
    }
    for (std::size_t k = 2 * d; k-- > d;) {
      const long c = prod[k];
      if (c == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[k - d + j] = ((prod[k - d + j] - c * f[j]) % ell + ell) % ell;
      prod[k] = 0;
    }
    prod.resize(d);
    return prod;
  }

  std::vector<long> pow(std::vector<long> a, long e) const {
    std::vector<long> r(dim(), 0);
    r[0] = 1 % ell;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::vector<long> gen() const {
    std::vector<long> t(dim(), 0);
    if (dim() == 1) {
      t[0] = ((-f[0]) % ell + ell) % ell;
    } else {
      t[1] = 1;
    }
    return t;
  }

  bool is_one(const std::vector<long>& a) const {
    if (a[0] != 1 % ell) return false;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (a[i] != 0) return false;
    }
    return true;
  }
};

}  // namespace

long UnramifiedField::residue_size() const { return ipow(ell, degree); }

std::vector<long> primitive_modulus(long ell, long degree) {
  if (!is_prime(ell)) throw Error(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  const long size = ipow(ell, degree);
  const std::vector<long> rs = prime_factors(size - 1);
  // t of multiplicative order ℓ^D − 1 makes every nonzero residue a unit, so
  // the order test also certifies irreducibility.
  for (long k = 1; k < size; ++k) {
    std::vector<long> f(static_cast<std::size_t>(degree) + 1, 0);
    long rest = k;
    for (long i = 0; i < degree; ++i) {
      f[i] = rest % ell;
      rest /= ell;
    }
    f[degree] = 1;
    if (f[0] == 0) continue;
    const ResidueRing ring{ell, f};
    const auto t = ring.gen();
    if (!ring.is_one(ring.pow(t, size - 1))) continue;
    bool primitive = true;
    for (long r : rs) {
      if (ring.is_one(ring.pow(t, (size - 1) / r))) primitive = false;
    }
    if (primitive) return f;
  }
  throw Error(ErrorCode::NoIrreducible, "no primitive polynomial found");
}

CyclicAlgebra::CyclicAlgebra(long ell, long m, long n, long precision)
    : ell_(ell), m_(m), n_(n), prec_(precision) {
  if (!is_prime(ell)) throw Error(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
  if (m < 1 || n < 1 || precision < 1) throw std::invalid_argument("m, n and precision must be positive");
  dim_ = m * n;
  long size = 1;
  for (long k = 0; k < dim_; ++k) {
    if (size > kMaxResidueSize / ell) {
      throw Error(ErrorCode::GroupTooLarge, "residue field larger than " + std::to_string(kMaxResidueSize));
    }
    size *= ell;
  }
  q_ = ipow(ell, m);
  mpz_ui_pow_ui(mod_.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(precision));
  base_ = UnramifiedField{ell, m, precision, primitive_modulus(ell, m)};
  top_ = UnramifiedField{ell, dim_, precision, primitive_modulus(ell, dim_)};
  for (long c : top_.modulus) f_.emplace_back(c);

  // Discrete logarithms to the base t̄.
  const ResidueRing ring{ell, top_.modulus};
  dlog_table_.assign(static_cast<std::size_t>(size), -1);
  std::vector<long> p(static_cast<std::size_t>(dim_), 0);
  p[0] = 1;
  const auto t = ring.gen();
  for (long k = 0; k + 1 < size; ++k) {
    long idx = 0;
    for (long i = dim_; i-- > 0;) idx = idx * ell + p[i];
    dlog_table_[idx] = static_cast<int>(k);
    p = ring.mul(p, t);
  }

  // σ(t): Newton iteration from t^q on the simple root of f.
  theta_ = l_pow(l_gen(), static_cast<unsigned long>(q_));
  for (int iter = 0;; ++iter) {
    const LElem fv = eval_modulus(theta_);
    if (l_is_zero(fv)) break;
    if (iter > 64) throw std::logic_error("Hensel lifting did not converge");
    theta_ = l_sub(theta_, l_mul(fv, l_inv(eval_modulus_derivative(theta_))));
  }
  theta_powers_.push_back(l_from(1));
  for (long i = 1; i < dim_; ++i) theta_powers_.push_back(l_mul(theta_powers_.back(), theta_));
}

LElem CyclicAlgebra::reduce(std::vector<mpz_class> poly) const {
  const auto d = static_cast<std::size_t>(dim_);
  for (std::size_t k = poly.size(); k-- > d;) {
    if (poly[k] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) poly[k - d + j] -= poly[k] * f_[j];
  }
  poly.resize(d);
  for (auto& c : poly) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod_.get_mpz_t());
  return poly;
}

LElem CyclicAlgebra::eval_modulus(const LElem& a) const {
  LElem acc = l_from(1);
  for (std::size_t j = f_.size() - 1; j-- > 0;) {
    acc = l_mul(acc, a);
    acc[0] += f_[j];
    mpz_mod(acc[0].get_mpz_t(), acc[0].get_mpz_t(), mod_.get_mpz_t());
  }
  return acc;
}

LElem CyclicAlgebra::eval_modulus_derivative(const LElem& a) const {
  LElem acc = l_zero();
  for (std::size_t j = f_.size() - 1; j >= 1; --j) {
    acc = l_mul(acc, a);
    acc[0] += f_[j] * static_cast<long>(j);
    mpz_mod(acc[0].get_mpz_t(), acc[0].get_mpz_t(), mod_.get_mpz_t());
  }
  return acc;
}

LElem CyclicAlgebra::l_zero() const { return LElem(static_cast<std::size_t>(dim_), mpz_class(0)); }

LElem CyclicAlgebra::l_from(long v) const {
  LElem a = l_zero();
  a[0] = v;
  mpz_mod(a[0].get_mpz_t(), a[0].get_mpz_t(), mod_.get_mpz_t());
  return a;
}

LElem CyclicAlgebra::l_gen() const {
  if (dim_ == 1) return l_from(-top_.modulus[0]);
  LElem a = l_zero();
  a[1] = 1;
  return a;
}

LElem CyclicAlgebra::l_add(const LElem& a, const LElem& b) const {
  LElem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + b[i];
    if (out[i] >= mod_) out[i] -= mod_;
  }
  return out;
}

LElem CyclicAlgebra::l_sub(const LElem& a, const LElem& b) const {
  LElem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] - b[i];
    if (out[i] < 0) out[i] += mod_;
  }
  return out;
}

LElem CyclicAlgebra::l_mul(const LElem& a, const LElem& b) const {
  std::vector<mpz_class> prod(2 * a.size(), mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  return reduce(std::move(prod));
}

LElem CyclicAlgebra::l_pow(LElem a, unsigned long e) const {
  LElem r = l_from(1);
  while (e > 0) {
    if (e & 1) r = l_mul(r, a);
    a = l_mul(a, a);
    e >>= 1;
  }
  return r;
}

LElem CyclicAlgebra::l_inv(const LElem& a) const {
  const ResidueRing ring{ell_, top_.modulus};
  std::vector<long> r(static_cast<std::size_t>(dim_));
  bool zero = true;
  for (long i = 0; i < dim_; ++i) {
    r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(ell_));
    zero = zero && r[i] == 0;
  }
  if (zero) throw Error(ErrorCode::NotInvertible, "element is not a unit");
  const auto ri = ring.pow(r, ipow(ell_, dim_) - 2);
  LElem x = l_zero();
  for (long i = 0; i < dim_; ++i) x[i] = ri[i];
  const LElem one = l_from(1);
  for (int iter = 0; iter < 128; ++iter) {
    const LElem e = l_mul(a, x);
    if (e == one) return x;
    x = l_mul(x, l_sub(l_from(2), e));
  }
  throw std::logic_error("inverse lifting did not converge");
}

bool CyclicAlgebra::l_is_zero(const LElem& a) const {
  for (const auto& c : a) {
    if (c != 0) return false;
  }
  return true;
}

long CyclicAlgebra::l_valuation(const LElem& a) const {
  long best = prec_;
  const mpz_class ell(ell_);
  for (const auto& c : a) {
    if (c == 0) continue;
    mpz_class rest;
    const long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), c.get_mpz_t(), ell.get_mpz_t()));
    best = std::min(best, v);
  }
  return best;
}

LElem CyclicAlgebra::sigma(const LElem& a) const {
  std::vector<mpz_class> acc(static_cast<std::size_t>(dim_), mpz_class(0));
  for (long i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < dim_; ++j) acc[j] += a[i] * theta_powers_[i][j];
  }
  return reduce(std::move(acc));
}

LElem CyclicAlgebra::sigma_pow(LElem a, long k) const {
  k = ((k % n_) + n_) % n_;
  for (long i = 0; i < k; ++i) a = sigma(a);
  return a;
}

LElem CyclicAlgebra::trace_to_base(const LElem& a) const {
  LElem acc = a;
  LElem cur = a;
  for (long i = 1; i < n_; ++i) {
    cur = sigma(cur);
    acc = l_add(acc, cur);
  }
  return acc;
}

long CyclicAlgebra::residue_index(const LElem& a) const {
  long idx = 0;
  for (long i = dim_; i-- > 0;) idx = idx * ell_ + static_cast<long>(mpz_fdiv_ui(a[i].get_mpz_t(), ell_));
  return idx;
}

long CyclicAlgebra::dlog(const LElem& a) const {
  const int k = dlog_table_[residue_index(a)];
  if (k < 0) throw Error(ErrorCode::NotInvertible, "residue is zero");
  return k;
}

LElem CyclicAlgebra::random_l(gmp_randclass& rng) const {
  LElem a(static_cast<std::size_t>(dim_));
  for (auto& c : a) c = rng.get_z_range(mod_);
  return a;
}

CyclicAlgElement CyclicAlgebra::from_l(const LElem& c) const {
  CyclicAlgElement out;
  out.coeffs.assign(static_cast<std::size_t>(n_), l_zero());
  out.coeffs[0] = c;
  return out;
}

CyclicAlgElement CyclicAlgebra::x() const {
  CyclicAlgElement out;
  out.coeffs.assign(static_cast<std::size_t>(n_), l_zero());
  if (n_ == 1) {
    out.coeffs[0] = l_from(ell_);
  } else {
    out.coeffs[1] = l_from(1);
  }
  return out;
}

CyclicAlgElement CyclicAlgebra::mul(const CyclicAlgElement& a, const CyclicAlgElement& b) const {
  // (c·xⁱ)(c′·xʲ) = c·σⁱ(c′)·x^{i+j}, with xⁿ = ℓ.
  std::vector<std::vector<LElem>> twisted(static_cast<std::size_t>(n_));
  for (long j = 0; j < n_; ++j) {
    LElem cur = b.coeffs[j];
    for (long i = 0; i < n_; ++i) {
      twisted[i].push_back(cur);
      if (i + 1 < n_) cur = sigma(cur);
    }
  }
  CyclicAlgElement out;
  out.coeffs.assign(static_cast<std::size_t>(n_), l_zero());
  const LElem pi = l_from(ell_);
  for (long i = 0; i < n_; ++i) {
    if (l_is_zero(a.coeffs[i])) continue;
    for (long j = 0; j < n_; ++j) {
      LElem term = l_mul(a.coeffs[i], twisted[i][j]);
      long k = i + j;
      if (k >= n_) {
        term = l_mul(term, pi);
        k -= n_;
      }
      out.coeffs[k] = l_add(out.coeffs[k], term);
    }
  }
  return out;
}

CyclicAlgElement CyclicAlgebra::add(const CyclicAlgElement& a, const CyclicAlgElement& b) const {
  CyclicAlgElement out;
  for (long i = 0; i < n_; ++i) out.coeffs.push_back(l_add(a.coeffs[i], b.coeffs[i]));
  return out;
}

bool CyclicAlgebra::equal(const CyclicAlgElement& a, const CyclicAlgElement& b) const { return a.coeffs == b.coeffs; }

ValueFrac CyclicAlgebra::valuation(const CyclicAlgElement& a) const {
  long best = -1;
  for (long i = 0; i < n_; ++i) {
    const long v = l_valuation(a.coeffs[i]);
    if (v >= prec_) continue;
    const long cand = n_ * v + i;
    if (best < 0 || cand < best) best = cand;
  }
  if (best < 0) throw Error(ErrorCode::PrecisionExhausted, "element vanishes to precision");
  return ValueFrac{best, n_};
}

SemidirectZnZm CyclicAlgebra::quotient_group() const { return ca_quotient_group(q_, n_); }

int CyclicAlgebra::quotient_image(const CyclicAlgElement& a) const {
  const ValueFrac v = valuation(a);
  const long i = v.numerator % n_;
  const long vc = v.numerator / n_;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(ell_), static_cast<unsigned long>(vc));
  LElem u = a.coeffs[i];
  for (auto& c : u) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
  const SemidirectZnZm g = quotient_group();
  return g.encode(dlog(u) % g.m, i);
}

CyclicAlgElement CyclicAlgebra::random_element(gmp_randclass& rng, long max_shift) const {
  const mpz_class ell(ell_);
  for (;;) {
    CyclicAlgElement out;
    bool zero = true;
    for (long i = 0; i < n_; ++i) {
      LElem c = random_l(rng);
      const long s = mpz_class(rng.get_z_range(max_shift + 1)).get_si();
      if (s > 0) c = l_mul(c, l_from(ipow(ell_, s)));
      zero = zero && l_is_zero(c);
      out.coeffs.push_back(std::move(c));
    }
    if (!zero) return out;
  }
}

CyclicAlgebra ca_make(long ell, long m, long n, long precision) { return CyclicAlgebra(ell, m, n, precision); }

namespace {

/// q = ℓ^m, or NotPrime.
std::pair<long, long> prime_power(long q) {
  if (q < 2) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  const auto ps = prime_factors(q);
  if (ps.size() != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  long m = 0;
  for (long r = q; r > 1; r /= ps[0]) ++m;
  return {ps[0], m};
}

}  // namespace

SemidirectZnZm ca_quotient_group(long q, long n) {
  prime_power(q);
  if (n < 1) throw std::invalid_argument("n must be positive");
  long big = 1;  // (qⁿ − 1)/(q − 1) = 1 + q + … + q^{n−1}
  long term = 1;
  for (long k = 1; k < n; ++k) {
    if (term > (FiniteGroup::kMaxOrder * 4L) / q) {
      throw Error(ErrorCode::GroupTooLarge, "quotient group exceeds " + std::to_string(FiniteGroup::kMaxOrder));
    }
    term *= q;
    big += term;
  }
  // qⁿ ≡ 1 modulo the geometric sum, so fg_semidirect never reports BadAction.
  return fg_semidirect(big, n, q % big);
}

long CaReport::count_maximal(long index, bool normal) const {
  long c = 0;
  for (const auto& r : maximal) {
    if (r.index == index && r.normal == normal) ++c;
  }
  return c;
}

CaReport ca_report(long q, long n, long precision, std::uint64_t seed, long samples) {
  const auto [ell, m] = prime_power(q);
  CaReport rep;
  rep.q = q;
  rep.n = n;
  rep.ell = ell;
  rep.m = m;
  rep.precision = precision;
  const SemidirectZnZm sd = ca_quotient_group(q, n);
  const FiniteGroup g = sd.group();
  rep.unit_part_order = sd.m;
  rep.order = g.order();
  rep.order_ok = sd.m * (q - 1) == ipow(q, n) - 1 && rep.order == sd.m * n;
  if (n == 2) rep.dihedral = fg_iso_dihedral(g, q + 1);
  rep.maximal = fg_maximal(g);
  if (n == 2) {
    for (long p : prime_factors(q + 1)) {
      if (p != 2 && rep.count_maximal(p, false) == 0) rep.nonnormal_ok = false;
    }
    for (const auto& r : rep.maximal) {
      if (!r.normal && (r.index % 2 == 0 || (q + 1) % r.index != 0)) rep.nonnormal_ok = false;
    }
  }

  const CyclicAlgebra ca(ell, m, n, precision);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  rep.samples = samples;
  std::vector<int> images;
  std::vector<CyclicAlgElement> elems;
  for (long k = 0; k < samples; ++k) {
    elems.push_back(ca.random_element(rng));
    images.push_back(ca.quotient_image(elems.back()));
  }
  rep.images_generate = g.generated(images).count() == g.order();
  rep.homomorphism_ok = true;
  for (std::size_t k = 0; k + 1 < elems.size(); k += 2) {
    const CyclicAlgElement ab = ca.mul(elems[k], elems[k + 1]);
    const ValueFrac va = ca.valuation(elems[k]), vb = ca.valuation(elems[k + 1]), vab = ca.valuation(ab);
    if (vab.numerator != va.numerator + vb.numerator) rep.homomorphism_ok = false;
    if (ca.quotient_image(ab) != g.mul(images[k], images[k + 1])) rep.homomorphism_ok = false;
  }
  return rep;
}

}  // namespace divalg
