#include "crn/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crn {
namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int pow10(long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

// Mantissa with optional decimal point, no sign, no exponent.
bool parse_mantissa(const std::string& s, Int& num, Int& den) {
  auto dot = s.find('.');
  std::string ip = (dot == std::string::npos) ? s : s.substr(0, dot);
  std::string fp = (dot == std::string::npos) ? "" : s.substr(dot + 1);
  if (ip.empty() && fp.empty()) return false;
  if (!ip.empty() && !all_digits(ip)) return false;
  if (!fp.empty() && !all_digits(fp)) return false;
  std::string joined = ip + fp;
  if (joined.empty()) return false;
  num = Int(joined, 10);
  den = pow10(static_cast<long>(fp.size()));
  return true;
}

}  // namespace

std::optional<Rat> try_parse_rational(const std::string& text) {
  size_t a = text.find_first_not_of(" \t");
  size_t b = text.find_last_not_of(" \t");
  if (a == std::string::npos) return std::nullopt;
  std::string s = text.substr(a, b - a + 1);

  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) return std::nullopt;

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string p = s.substr(0, slash);
    std::string q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) return std::nullopt;
    Int den(q, 10);
    if (den == 0) return std::nullopt;
    Rat r(Int(p, 10), den);
    r.canonicalize();
    return neg ? Rat(-r) : r;
  }

  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = s.substr(epos + 1);
    s.erase(epos);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.erase(0, 1);
    }
    if (!all_digits(es) || es.size() > 6) return std::nullopt;
    exp10 = std::stol(es);
    if (eneg) exp10 = -exp10;
  }

  Int num, den;
  if (!parse_mantissa(s, num, den)) return std::nullopt;
  if (exp10 > 0)
    num *= pow10(exp10);
  else if (exp10 < 0)
    den *= pow10(-exp10);
  Rat r(num, den);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

Rat parse_rational(const std::string& text) {
  auto r = try_parse_rational(text);
  if (!r) throw std::invalid_argument("not a rational number: '" + text + "'");
  return *r;
}

std::string rational_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int floor_int(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int ceil_int(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Rat pow_rat(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  bool inv = e < 0;
  unsigned long k = static_cast<unsigned long>(inv ? -e : e);
  Int pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), r.get_num().get_mpz_t(), k);
  mpz_pow_ui(pd.get_mpz_t(), r.get_den().get_mpz_t(), k);
  if (inv) {
    if (pn == 0) throw std::domain_error("zero to a negative power");
    std::swap(pn, pd);
    if (pd < 0) {
      pd = -pd;
      pn = -pn;
    }
  }
  Rat out(pn, pd);
  out.canonicalize();
  return out;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::string decimal_string(const Rat& r, int digits) {
  if (digits < 1) digits = 1;
  if (r == 0) return "0";
  Rat a = abs(r);

  // e = decimal exponent: 10^(e-1) <= a < 10^e.
  long e = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
  auto cmp_pow = [&](long k) {  // sign of a - 10^k
    Rat p = k >= 0 ? Rat(pow10(k)) : Rat(1, pow10(-k));
    return cmp(a, p);
  };
  while (cmp_pow(e) >= 0) ++e;
  while (cmp_pow(e - 1) < 0) --e;

  // Round a * 10^(digits - e) half away from zero to an integer.
  long shift = digits - e;
  Rat scaled = a;
  if (shift >= 0)
    scaled *= Rat(pow10(shift));
  else
    scaled /= Rat(pow10(-shift));
  Int m = floor_int(scaled + Rat(1, 2));
  Int hi = pow10(digits);
  if (m >= hi) {  // rounded up to an extra digit: 999.96 -> 1000
    m /= 10;
    ++e;
  }

  std::string ds = m.get_str();
  while (ds.size() > 1 && ds.back() == '0') ds.pop_back();

  std::string out;
  if (e > digits + 6 || e < -5) {  // extreme magnitudes: scientific
    out = ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(e - 1);
  } else if (e >= static_cast<long>(ds.size())) {
    out = ds + std::string(e - ds.size(), '0');
  } else if (e >= 1) {
    out = ds.substr(0, e) + "." + ds.substr(e);
  } else {
    out = "0." + std::string(-e, '0') + ds;
  }
  return (sgn(r) < 0 ? "-" : "") + out;
}

}  // namespace crn
