#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

#include "mamass/errors.hpp"
#include "mamass/functions.hpp"

namespace mamass {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  FunctionSpec spec() {
    skip();
    std::size_t start = pos_;
    std::string name = ident();
    expect('(');
    FunctionSpec f;
    if (name == "radial") {
      auto kw = keywords({"profile", "c"});
      std::string prof = kw.count("profile") ? kw["profile"] : "log";
      if (prof == "log") f.profile = RadialProfile::log;
      else if (prof == "sqrtlog") f.profile = RadialProfile::sqrtlog;
      else fail("unknown radial profile '" + prof + "'");
      f.kind = FunctionKind::radial;
      f.c = kw.count("c") ? to_real(kw["c"]) : 1.0;
    } else if (name == "loglinear") {
      f.kind = FunctionKind::loglinear;
      key("A");
      auto rows = matrix();
      std::size_t d = rows.size();
      f.A = CMat(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) fail("A must be square");
        for (std::size_t j = 0; j < d; ++j) f.A(i, j) = rows[i][j];
      }
      if (std::abs(f.A.determinant()) < 1e-12) fail("A must be invertible");
      expect(')');
    } else if (name == "monomial_ideal") {
      f.kind = FunctionKind::monomial_ideal;
      bool have_w = false;
      while (true) {
        skip();
        std::string k = ident();
        expect('=');
        if (k == "m") {
          for (auto& row : matrix()) {
            std::vector<int> r;
            for (cplx c : row) r.push_back(to_nonneg_int(c));
            f.m.push_back(r);
          }
        } else if (k == "w") {
          for (cplx c : vector()) f.w.push_back(to_real(c));
          have_w = true;
        } else {
          fail("unknown argument '" + k + "'");
        }
        if (!accept(',')) break;
      }
      expect(')');
      if (f.m.empty()) fail("monomial_ideal needs m");
      for (auto& r : f.m)
        if (r.size() != f.m[0].size()) fail("exponent rows differ in length");
      if (!have_w) f.w.assign(f.m.size(), 1.0);
      if (f.w.size() != f.m.size()) fail("w must have one weight per generator");
      for (double x : f.w)
        if (!(x > 0)) fail("weights must be positive");
    } else if (name == "lse_toric") {
      f.kind = FunctionKind::lse_toric;
      while (true) {
        skip();
        std::string k = ident();
        expect('=');
        if (k == "a") {
          for (cplx c : vector()) f.a.push_back(to_real(c));
        } else if (k == "beta") {
          f.beta = to_real(number());
        } else {
          fail("unknown argument '" + k + "'");
        }
        if (!accept(',')) break;
      }
      expect(')');
      if (f.a.empty()) fail("lse_toric needs a");
      for (double x : f.a)
        if (!(x > 0)) fail("toric exponents must be positive");
      if (!(f.beta > 0)) fail("beta must be positive");
    } else if (name == "sqrt_compose") {
      f.kind = FunctionKind::sqrt_compose;
      f.inner = std::make_shared<const FunctionSpec>(spec());
      expect(')');
    } else if (name == "scale") {
      f.kind = FunctionKind::scale;
      skip();
      if (peek_ident() == "c") {
        ident();
        expect('=');
      }
      f.c = to_real(number());
      expect(',');
      f.inner = std::make_shared<const FunctionSpec>(spec());
      expect(')');
      if (!(f.c > 0)) fail("scale factor must be positive");
    } else if (name == "smooth_poly") {
      f.kind = FunctionKind::smooth_poly;
      key("terms");
      expect('[');
      do {
        expect('(');
        PolyTerm t;
        t.coeff = number();
        expect(',');
        for (cplx c : vector()) t.zexp.push_back(to_nonneg_int(c));
        expect(',');
        for (cplx c : vector()) t.zbarexp.push_back(to_nonneg_int(c));
        expect(')');
        if (t.zexp.size() != t.zbarexp.size()) fail("exponent lists differ in length");
        if (!f.terms.empty() && t.zexp.size() != f.terms[0].zexp.size())
          fail("terms differ in dimension");
        f.terms.push_back(t);
      } while (accept(','));
      expect(']');
      expect(')');
    } else {
      pos_ = start;
      fail("unknown constructor '" + name + "'");
    }
    f.text = s_.substr(start, pos_ - start);
    return f;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string peek_ident() {
    std::size_t save = pos_;
    std::string r;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      r += s_[pos_++];
    pos_ = save;
    return r;
  }

  std::string ident() {
    skip();
    std::string r;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      r += s_[pos_++];
    if (r.empty()) fail("expected identifier");
    return r;
  }

  void key(const std::string& k) {
    if (ident() != k) fail("expected argument '" + k + "'");
    expect('=');
  }


  struct Kw {
    std::map<std::string, std::string> m;
    std::size_t count(const std::string& k) const { return m.count(k); }
    std::string& operator[](const std::string& k) { return m[k]; }
  };

  Kw keywords(const std::vector<std::string>& allowed) {
    Kw kw;
    if (accept(')')) return kw;
    do {
      std::string k = ident();
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
        fail("unknown argument '" + k + "'");
      expect('=');
      skip();
      std::string v;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')') v += s_[pos_++];
      while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
      if (v.empty()) fail("empty value for '" + k + "'");
      kw[k] = v;
    } while (accept(','));
    expect(')');
    return kw;
  }

  double to_real(const std::string& v) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x)) fail("bad number '" + v + "'");
    return x;
  }

  double to_real(cplx c) {
    if (c.imag() != 0.0) fail("expected a real number");
    return c.real();
  }

  int to_nonneg_int(cplx c) {
    double x = to_real(c);
    if (x < 0 || x != std::floor(x) || x > 1000) fail("expected a non-negative integer");
    return static_cast<int>(x);
  }

  double unsigned_real() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double x = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(x)) fail("expected a number");
    pos_ += end - begin;
    return x;
  }

  // REAL, REAL i, REAL(+|-)REAL i, i, -i
  cplx number() {
    skip();
    double sign = 1.0;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      sign = s_[pos_] == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return {0.0, sign};
    }
    double re = sign * unsigned_real();
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return {0.0, re};
    }
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      double s2 = s_[pos_] == '-' ? -1.0 : 1.0;
      std::size_t save = pos_++;
      double im = 1.0;
      if (pos_ < s_.size() && s_[pos_] != 'i') im = unsigned_real();
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return {re, s2 * im};
      }
      pos_ = save;
    }
    return {re, 0.0};
  }

  std::vector<cplx> vector() {
    expect('[');
    std::vector<cplx> v;
    if (accept(']')) fail("empty list");
    do v.push_back(number());
    while (accept(','));
    expect(']');
    return v;
  }

  std::vector<std::vector<cplx>> matrix() {
    expect('[');
    std::vector<std::vector<cplx>> rows;
    do rows.push_back(vector());
    while (accept(','));
    expect(']');
    return rows;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

FunctionSpec parse_spec(const std::string& text) {
  Parser p(text);
  FunctionSpec f = p.spec();
  p.finish();
  return f;
}

}  // namespace mamass
