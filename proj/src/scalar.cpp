#include "qds/scalar.hpp"

#include <cmath>
#include <stdexcept>

#include "qds/error.hpp"

namespace qds {

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  const mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const GaussRational& z) {
  if (z.is_real()) return format_rational(z.re());
  std::string out = format_rational(z.re());
  if (sgn(z.im()) >= 0) out += "+";
  return out + format_rational(z.im()) + "i";
}

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty rational");
  const auto slash = text.find('/');
  auto check_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num(text.substr(0, slash));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!check_int(text.substr(0, slash))) throw Error(ErrorKind::Parse, "bad rational: " + std::string(text));
  mpq_class q;
  if (slash == std::string_view::npos) {
    q = mpq_class(mpz_class(num));
  } else {
    std::string den(text.substr(slash + 1));
    if (!check_int(den) || den[0] == '-' || den[0] == '+')
      throw Error(ErrorKind::Parse, "bad rational: " + std::string(text));
    mpz_class d(den);
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator: " + std::string(text));
    q = mpq_class(mpz_class(num), d);
  }
  q.canonicalize();
  return q;
}

namespace {

// Continued-fraction convergents of x, stopping at denominators above max_den.
template <class Visit>
void for_each_convergent(double x, long max_den, Visit&& visit) {
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (!std::isfinite(a) || std::abs(a) > 1e15) return;
    const mpz_class ai(a);
    mpz_class p2 = ai * p1 + p0;
    mpz_class q2 = ai * q1 + q0;
    if (q2 > max_den) return;
    if (!visit(mpq_class(p2, q2))) return;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a;
    if (frac < 1e-18) return;
    r = 1.0 / frac;
  }
}

}  // namespace

std::optional<mpq_class> snap_rational(double x, long max_den, double tol) {
  std::optional<mpq_class> found;
  for_each_convergent(x, max_den, [&](const mpq_class& c) {
    if (std::abs(c.get_d() - x) <= tol) {
      found = c;
      found->canonicalize();
      return false;
    }
    return true;
  });
  return found;
}

std::optional<GaussRational> snap_gauss(Complex z, long max_den, double tol) {
  auto re = snap_rational(z.real(), max_den, tol);
  auto im = snap_rational(z.imag(), max_den, tol);
  if (!re || !im) return std::nullopt;
  return GaussRational(*re, *im);
}

mpq_class rational_lower_bound(double x, long max_den) {
  mpq_class best(static_cast<long>(std::floor(x)));
  for_each_convergent(x, max_den, [&](const mpq_class& c) {
    if (c.get_d() <= x && c > best) best = c;
    return true;
  });
  best.canonicalize();
  return best;
}

}  // namespace qds
