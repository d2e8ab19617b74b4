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

// Series file format (UTF-8, LF line endings, no trailing whitespace):
//
//   SMFP v1 kind=<scalar|matrix> g=<g> domain=<Q|Fp:p> k=<num>/<den> B=<B> d=<d>
//   <g;d;M11,M12,...> ; <coefficient>
//   ...
//
// Rows follow the canonical key order and never carry a zero coefficient.
// Rationals print as num/den in lowest terms, residues as integers in [0, p),
// matrix coefficients as their upper triangle, comma-separated.

#include <iomanip>
#include <map>
#include <sstream>

#include "core/qseries.hpp"

namespace smfp {
namespace {

constexpr std::string_view kMagic = "SMFP v1";
constexpr std::string_view kSeparator = " ; ";

struct Header {
  bool matrix = false;
  int genus = 1;
  CoeffDomain domain = CoeffDomain::rational();
  Weight weight;
  std::int64_t bound = 0;
  std::int64_t scale = 1;
};

std::string header_line(std::string_view kind, int genus, const CoeffDomain& domain, Weight w, std::int64_t bound,
                        std::int64_t scale) {
  std::string out(kMagic);
  out += " kind=";
  out += kind;
  out += " g=" + std::to_string(genus) + " domain=" + domain.to_string() + " k=" + w.to_string() +
         " B=" + std::to_string(bound) + " d=" + std::to_string(scale);
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    parse_fail(line, "malformed integer '" + s + "'");
  }
  if (used != s.size() || s.empty() || std::to_string(v) != s) parse_fail(line, "malformed integer '" + s + "'");
  return v;
}

Header parse_header(const std::string& line) {
  if (line.rfind(std::string(kMagic) + " ", 0) != 0) parse_fail(1, "missing magic string '" + std::string(kMagic) + "'");
  std::istringstream ss(line.substr(kMagic.size() + 1));
  const char* expected[] = {"kind", "g", "domain", "k", "B", "d"};
  std::map<std::string, std::string> fields;
  std::string token;
  int idx = 0;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (idx >= 6 || eq == std::string::npos || token.substr(0, eq) != expected[idx])
      parse_fail(1, "unexpected header field '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
    ++idx;
  }
  if (idx != 6) parse_fail(1, "incomplete header");
  Header h;
  if (fields["kind"] == "matrix") h.matrix = true;
  else if (fields["kind"] != "scalar") parse_fail(1, "unknown kind '" + fields["kind"] + "'");
  h.genus = static_cast<int>(parse_int(fields["g"], 1));
  h.bound = parse_int(fields["B"], 1);
  h.scale = parse_int(fields["d"], 1);
  if (h.genus < 1 || h.genus > 64 || h.bound < 0 || h.scale < 1) parse_fail(1, "header values out of range");
  try {
    h.domain = CoeffDomain::parse(fields["domain"]);
    h.weight = Weight::parse(fields["k"]);
  } catch (const Error& e) {
    parse_fail(1, e.what());
  }
  if (h.weight.to_string() != fields["k"]) parse_fail(1, "weight not in lowest terms");
  if (h.matrix && !h.domain.is_prime_field()) parse_fail(1, "matrix series must be over F_p");
  if (line != header_line(h.matrix ? "matrix" : "scalar", h.genus, h.domain, h.weight, h.bound, h.scale))
    parse_fail(1, "header is not in canonical form");
  return h;
}

std::string render_matrix(const SymMatrixFp& m) {
  std::string out;
  for (std::size_t i = 0; i < m.upper().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m.upper()[i]);
  }
  return out;
}

std::string rational_for_table(const BigRational& q) {
  return q.is_integer() ? q.numerator().get_str() : q.to_string();
}

std::string form_for_table(const HalfIntegralForm& t) {
  const BigRational den(2 * static_cast<long>(t.scale()));
  std::string out = "[";
  for (int i = 0; i < t.genus(); ++i) {
    if (i) out += ", ";
    if (t.genus() > 1) out += "[";
    for (int j = 0; j < t.genus(); ++j) {
      if (j) out += ", ";
      out += rational_for_table(BigRational(static_cast<long>(t.at(i, j))) / den);
    }
    if (t.genus() > 1) out += "]";
  }
  return out + "]";
}

}  // namespace

std::string serialize(const QSeries& f) {
  std::string out = header_line("scalar", f.genus(), f.domain(), f.weight(), f.bound(), f.scale());
  out += '\n';
  if (f.domain().is_rational()) {
    for (const auto& [k, v] : f.rational_terms()) out += k.render() + std::string(kSeparator) + v.to_string() + '\n';
  } else {
    for (const auto& [k, v] : f.residue_terms()) out += k.render() + std::string(kSeparator) + std::to_string(v) + '\n';
  }
  return out;
}

std::string serialize(const MatrixQSeries& f) {
  std::string out = header_line("matrix", f.genus(), CoeffDomain::prime_field(f.modulus()), f.weight(), f.bound(),
                                f.scale());
  out += '\n';
  for (const auto& [k, v] : f.terms()) out += k.render() + std::string(kSeparator) + render_matrix(v) + '\n';
  return out;
}

AnySeries deserialize(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start < text.size()) {
      const auto nl = text.find('\n', start);
      if (nl == std::string::npos) {
        lines.push_back(text.substr(start));
        break;
      }
      lines.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }
  if (lines.empty()) parse_fail(1, "empty input");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.find('\r') != std::string::npos) parse_fail(i + 1, "CR in line (LF line endings required)");
    if (!l.empty() && (l.back() == ' ' || l.back() == '\t')) parse_fail(i + 1, "trailing whitespace");
  }
  const Header h = parse_header(lines[0]);

  std::map<HalfIntegralForm, BigRational> rational;
  std::map<HalfIntegralForm, std::int64_t> residues;
  std::map<HalfIntegralForm, SymMatrixFp> matrices;
  const HalfIntegralForm* previous = nullptr;
  HalfIntegralForm prev_key;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto& l = lines[i];
    if (l.empty()) parse_fail(lineno, "empty line");
    const auto sep = l.find(kSeparator);
    if (sep == std::string::npos) parse_fail(lineno, "missing ' ; ' separator");
    HalfIntegralForm key;
    try {
      key = HalfIntegralForm::parse(l.substr(0, sep));
    } catch (const Error& e) {
      parse_fail(lineno, e.what());
    }
    if (key.render() != l.substr(0, sep)) parse_fail(lineno, "form not in canonical rendering");
    if (key.genus() != h.genus || key.scale() != h.scale) parse_fail(lineno, "form genus/scale disagree with header");
    if (!is_psd(key)) parse_fail(lineno, "form is not positive semidefinite");
    if (key.trace_scaled() > 2 * h.scale * h.bound) parse_fail(lineno, "form exceeds the trace bound");
    if (previous && !(prev_key < key)) parse_fail(lineno, "rows out of canonical order");
    prev_key = key;
    previous = &prev_key;
    const std::string value = l.substr(sep + kSeparator.size());
    if (h.matrix) {
      std::vector<std::uint32_t> upper;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto v = parse_int(item, lineno);
        if (v < 0 || v >= h.domain.modulus()) parse_fail(lineno, "matrix entry not a reduced residue");
        upper.push_back(static_cast<std::uint32_t>(v));
      }
      if (upper.size() != static_cast<std::size_t>(h.genus * (h.genus + 1) / 2))
        parse_fail(lineno, "matrix coefficient has wrong number of entries");
      SymMatrixFp m(h.genus, h.domain.modulus(), std::move(upper));
      if (m.is_zero()) parse_fail(lineno, "zero coefficient");
      matrices.emplace(key, std::move(m));
    } else if (h.domain.is_rational()) {
      BigRational q;
      try {
        q = BigRational::parse(value);
      } catch (const Error& e) {
        parse_fail(lineno, e.what());
      }
      if (q.to_string() != value) parse_fail(lineno, "rational not written as num/den in lowest terms");
      if (q.is_zero()) parse_fail(lineno, "zero coefficient");
      rational.emplace(key, q);
    } else {
      const auto v = parse_int(value, lineno);
      if (v <= 0 || v >= h.domain.modulus()) parse_fail(lineno, "coefficient not a nonzero reduced residue");
      residues.emplace(key, v);
    }
  }
  if (h.matrix) return MatrixQSeries(h.genus, h.domain.modulus(), h.bound, h.scale, matrices, h.weight);
  if (h.domain.is_rational()) return QSeries::from_rational(h.genus, h.weight, h.bound, h.scale, rational);
  return QSeries::from_residues(h.genus, h.domain.modulus(), h.weight, h.bound, h.scale, residues);
}

std::string format_table(const AnySeries& series, std::int64_t max_trace) {
  std::ostringstream out;
  auto row = [&](const std::string& trace, const std::string& form, const std::string& value) {
    out << std::left << std::setw(8) << trace << std::setw(28) << form << value << '\n';
  };
  if (const auto* f = std::get_if<QSeries>(&series)) {
    out << "# " << header_line("scalar", f->genus(), f->domain(), f->weight(), f->bound(), f->scale()) << '\n';
    if (f->is_zero()) return out.str();
    row("trace", "T", "a(T)");
    const BigRational limit(static_cast<long>(max_trace));
    if (f->domain().is_rational()) {
      for (const auto& [k, v] : f->rational_terms())
        if (k.trace() <= limit) row(rational_for_table(k.trace()), form_for_table(k), rational_for_table(v));
    } else {
      for (const auto& [k, v] : f->residue_terms())
        if (k.trace() <= limit) row(rational_for_table(k.trace()), form_for_table(k), std::to_string(v));
    }
    return out.str();
  }
  const auto& m = std::get<MatrixQSeries>(series);
  out << "# " << header_line("matrix", m.genus(), CoeffDomain::prime_field(m.modulus()), m.weight(), m.bound(), m.scale())
      << '\n';
  if (m.is_zero()) return out.str();
  row("trace", "T", "a(T)");
  const BigRational limit(static_cast<long>(max_trace));
  for (const auto& [k, v] : m.terms()) {
    if (k.trace() > limit) continue;
    std::string mat = "[";
    for (int i = 0; i < m.genus(); ++i) {
      if (i) mat += ", ";
      mat += "[";
      for (int j = 0; j < m.genus(); ++j) {
        if (j) mat += ", ";
        mat += std::to_string(v.at(i, j));
      }
      mat += "]";
    }
    row(rational_for_table(k.trace()), form_for_table(k), mat + "]");
  }
  return out.str();
}

}  // namespace smfp
