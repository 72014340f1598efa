#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "alea/error.hpp"
#include "alea/text.hpp"

namespace alea {

namespace {

std::string render(const Val& v, bool pretty);

std::string join_elems(const char* open, const char* close,
                       const std::vector<const Val*>& xs, bool pretty) {
  std::string out = open;
  bool first = true;
  for (const Val* x : xs) {
    if (!first) out += ", ";
    first = false;
    out += render(*x, pretty);
  }
  out += close;
  return out;
}

std::string render(const Val& v, bool pretty) {
  switch (v.kind()) {
    case ValKind::Num:
      if (pretty && v.num().is_nan()) return "NaN";
      return render_number(v.num());
    case ValKind::List: {
      std::vector<const Val*> xs;
      for (const Val& x : v.list()) xs.push_back(&x);
      return join_elems("[", "]", xs, pretty);
    }
    case ValKind::Bag: {
      std::vector<const Val*> xs;
      for (const auto& [x, m] : v.bag()) {
        for (std::uint64_t i = 0; i < m; ++i) xs.push_back(&x);
      }
      return pretty ? join_elems("⟨", "⟩", xs, true)
                    : join_elems("<{", "}>", xs, false);
    }
    case ValKind::Set: {
      std::vector<const Val*> xs;
      for (const Val& x : v.set()) xs.push_back(&x);
      return join_elems("{", "}", xs, pretty);
    }
    case ValKind::Record: {
      std::string out = "(";
      bool first = true;
      for (const auto& [id, x] : v.record()) {
        if (!first) out += ", ";
        first = false;
        if (!id.is_positional()) out += id.name() + ": ";
        out += render(x, pretty);
      }
      return out + ")";
    }
    case ValKind::Tag: {
      const Val& payload = v.tag_payload();
      std::string out = "@" + v.tag_case();
      if (payload.kind() == ValKind::Record) {
        if (!payload.record().empty()) out += render(payload, pretty);
      } else {
        out += "(" + render(payload, pretty) + ")";
      }
      return out;
    }
  }
  throw InternalError("unhandled value kind");
}

std::size_t ndigits(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 10); }

mpz_class pow10(unsigned long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return p;
}

}  // namespace

std::string render_number(const Number& n) {
  if (n.is_nan()) return "0/0";
  const Rational& q = n.rat();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string render_val(const Val& v) { return render(v, false); }

std::string render_val_pretty(const Val& v) { return render(v, true); }

std::string render_decimal(const Rational& q) {
  if (q == 0) return "0";
  std::string sign = q < 0 ? "-" : "";
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();

  // Exact when the denominator is 2^a * 5^b.
  mpz_class rest = den;
  unsigned long a = 0;
  unsigned long b = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++a;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++b;
  }
  if (rest == 1) {
    unsigned long k = std::max(a, b);
    if (k == 0) return sign + num.get_str();
    mpz_class scale = pow10(k);
    mpz_class scaled = num * (scale / den);
    mpz_class ip = scaled / scale;
    std::string frac = mpz_class(scaled % scale).get_str();
    frac.insert(0, k - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (frac.empty()) return sign + ip.get_str();
    return sign + ip.get_str() + "." + frac;
  }

  // 15 significant digits, rounded half up.
  long shift = 15 - (static_cast<long>(ndigits(num)) - static_cast<long>(ndigits(den)));
  const auto scaled_digits = [&](long sh) {
    if (sh >= 0) return mpz_class(num * pow10(static_cast<unsigned long>(sh)) / den);
    return mpz_class(num / (den * pow10(static_cast<unsigned long>(-sh))));
  };
  mpz_class t = scaled_digits(shift);
  while (t < pow10(14)) {
    ++shift;
    t = scaled_digits(shift);
  }
  while (t >= pow10(15)) {
    --shift;
    t = scaled_digits(shift);
  }
  t = (scaled_digits(shift + 1) + 5) / 10;
  if (t >= pow10(15)) {
    t /= 10;
    --shift;
  }

  std::string digits = t.get_str();
  std::string out;
  if (shift <= 0) {
    out = digits + std::string(static_cast<std::size_t>(-shift), '0');
  } else if (shift >= 15) {
    std::string frac = std::string(static_cast<std::size_t>(shift) - 15, '0') + digits;
    while (frac.back() == '0') frac.pop_back();
    out = "0." + frac;
  } else {
    std::string frac = digits.substr(15 - static_cast<std::size_t>(shift));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = digits.substr(0, 15 - static_cast<std::size_t>(shift));
    if (!frac.empty()) out += "." + frac;
  }
  return "≈" + sign + out;
}

std::string render_dist_table(const Dist& d) {
  const auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (char c : s) {
      if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++w;
    }
    return w;
  };
  std::vector<std::string> vals;
  std::vector<std::string> probs;
  std::size_t vw = 0;
  std::size_t pw = 0;
  for (const auto& [v, p] : d.pmf()) {
    vals.push_back(render_val_pretty(v));
    probs.push_back(p.get_den() == 1 ? p.get_num().get_str()
                                     : p.get_num().get_str() + "/" + p.get_den().get_str());
    vw = std::max(vw, width(vals.back()));
    pw = std::max(pw, probs.back().size());
  }
  std::string out;
  std::size_t i = 0;
  for (const auto& [v, p] : d.pmf()) {
    out += vals[i] + std::string(vw - width(vals[i]), ' ') + "  ";
    out += probs[i] + std::string(pw - probs[i].size(), ' ') + "  ";
    out += render_decimal(p);
    out += "\n";
    ++i;
  }
  return out;
}

std::string render_dist_records(const Dist& d) {
  std::string out;
  for (const auto& [v, p] : d.pmf()) {
    out += render_val(v) + "\t" + p.get_num().get_str() + "\t" + p.get_den().get_str() + "\n";
  }
  return out;
}

}  // namespace alea
