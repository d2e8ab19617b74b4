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


// smfp: generate series, apply operator pipelines, run verification suites
// and print coefficient tables.
//
// Exit codes: 0 success; 1 a verification suite reported FAIL; 2 usage
// error or unknown name; 3 parameter or library error; 4 malformed input.

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "smfp/smfp.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParam = 3;
constexpr int kExitParse = 4;

struct SeriesDeleter {
  void operator()(smfp_series* s) const { smfp_series_free(s); }
};
using Series = std::unique_ptr<smfp_series, SeriesDeleter>;

struct CString {
  char* p = nullptr;
  ~CString() { smfp_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

/// Library failure carrying the exit code it maps to.
struct Failure {
  int exit_code;
  std::string message;
};

void check(smfp_status st) {
  if (st == SMFP_OK) return;
  const int code = st == SMFP_ERR_PARSE ? kExitParse : kExitParam;
  throw Failure{code, std::string(smfp_status_name(st)) + ": " + smfp_last_error()};
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitParam, "IOError: cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), {}};
}

/// Writes via a temporary file in the target directory and renames it into place.
void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kExitParam, "IOError: cannot write '" + tmp.string() + "'"};
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Failure{kExitParam, "IOError: short write to '" + tmp.string() + "'"};
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure{kExitParam, "IOError: cannot rename onto '" + path + "'"};
  }
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") std::cout << text;
  else write_atomic(out, text);
}

Series load(const std::string& path) {
  const std::string text = read_input(path);
  smfp_series* s = nullptr;
  check(smfp_series_parse(text.c_str(), &s));
  return Series(s);
}

std::string serialize(const smfp_series* s) {
  CString text;
  check(smfp_series_serialize(s, &text.p));
  return text.str();
}

struct Options {
  std::optional<int> g;
  std::optional<std::uint32_t> p;
  std::optional<std::int64_t> bound;
  std::optional<std::int64_t> d;
  std::optional<long> k;
  std::uint64_t seed = 42;
  std::string out;
  // gen / op extras
  std::string name;
  std::string m = "0000";
  std::optional<std::int64_t> nu;
  std::int64_t a = 0;
  int i = 0;
  std::optional<std::int64_t> l;
  std::optional<std::int64_t> cap;
  std::string input = "-";
  std::optional<std::int64_t> max_trace;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--g", o.g, "Genus");
  sub->add_option("--p", o.p, "Odd prime");
  sub->add_option("--B", o.bound, "Trace bound");
  sub->add_option("--d", o.d, "Output scale (multiple of the natural scale)");
  sub->add_option("--k", o.k, "Weight");
  sub->add_option("--seed", o.seed, "Seed for randomized checks");
  sub->add_option("--out", o.out, "Output path (stdout when omitted)");
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw Failure{kExitUsage, std::string("missing required flag ") + flag};
  return *v;
}

int cmd_gen(const Options& o) {
  static const char* kNames[] = {"eisenstein", "delta", "hasse", "theta", "chi10", "psi4", "thetafa"};
  if (std::find(std::begin(kNames), std::end(kNames), o.name) == std::end(kNames))
    throw Failure{kExitUsage, "unknown generator '" + o.name +
                                  "' (expected eisenstein, delta, hasse, theta, chi10, psi4, thetafa)"};
  const std::int64_t b = need(o.bound, "--B");
  smfp_series* raw = nullptr;
  if (o.name == "eisenstein") check(smfp_gen_eisenstein(need(o.k, "--k"), b, &raw));
  else if (o.name == "delta") check(smfp_gen_delta(b, &raw));
  else if (o.name == "hasse") check(smfp_gen_hasse(o.g.value_or(1), need(o.p, "--p"), b, &raw));
  else if (o.name == "theta") check(smfp_gen_theta(o.m.c_str(), b, &raw));
  else if (o.name == "chi10") check(smfp_gen_chi10(b, &raw));
  else if (o.name == "psi4") check(smfp_gen_psi4(b, &raw));
  else check(smfp_gen_theta_fa(o.nu.value_or(1), o.a, o.i, b, &raw));
  Series s(raw);
  if (o.p && o.name != "hasse") {
    smfp_series* red = nullptr;
    check(smfp_series_reduce(s.get(), *o.p, &red));
    s.reset(red);
  }
  if (o.d) {
    smfp_series* rs = nullptr;
    check(smfp_series_rescale(s.get(), *o.d, &rs));
    s.reset(rs);
  }
  emit(o.out, serialize(s.get()));
  return 0;
}

int cmd_op(const Options& o) {
  Series in = load(o.input);
  smfp_op_params prm{o.p.value_or(0), o.l.value_or(0), o.k.value_or(0), o.nu.value_or(0), o.cap.value_or(0)};
  smfp_series* raw = nullptr;
  CString log;
  check(smfp_apply_pipeline(in.get(), o.name.c_str(), &prm, &raw, &log.p));
  Series out(raw);
  const std::string text = serialize(out.get());
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cerr << log.str();
  } else {
    write_atomic(o.out, text);
    write_atomic(o.out + ".oplog", log.str());
  }
  return 0;
}

int cmd_verify(const Options& o) {
  std::istringstream names(smfp_suite_names());
  bool known = false;
  for (std::string n; std::getline(names, n);) known = known || n == o.name;
  if (!known) throw Failure{kExitUsage, "unknown suite '" + o.name + "'"};
  CString report;
  int passed = 0;
  check(smfp_verify(o.name.c_str(), o.p.has_value(), o.p.value_or(0), o.bound.has_value(), o.bound.value_or(0), o.seed,
                    &report.p, &passed));
  emit(o.out, report.str());
  return passed ? 0 : kExitFail;
}

int cmd_table(const Options& o) {
  Series in = load(o.input);
  smfp_series_info info{};
  check(smfp_series_info_get(in.get(), &info));
  CString table;
  check(smfp_series_table(in.get(), o.max_trace.value_or(info.bound), &table.p));
  emit(o.out, table.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Siegel modular forms mod p: q-expansions, operators and verification suites"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a series (eisenstein, delta, hasse, theta, chi10, psi4, thetafa)");
  gen->add_option("name", o.name, "Generator name")->required();
  add_common(gen, o);
  gen->add_option("--m", o.m, "Theta characteristic as 2g binary digits (2m' then 2m'')");
  gen->add_option("--nu", o.nu, "Index of the theta series f_a");
  gen->add_option("--a", o.a, "Numerator of a = a_num/2 for f_a");
  gen->add_option("--i", o.i, "Derivative order of f_a");

  auto* op = app.add_subcommand("op", "Apply a comma-separated operator pipeline to a series file");
  op->add_option("pipeline", o.name, "e.g. U,V or reduce,phi")->required();
  op->add_option("input", o.input, "Series file ('-' for stdin)");
  add_common(op, o);
  op->add_option("--l", o.l, "Hecke prime");
  op->add_option("--nu", o.nu, "Fourier-Jacobi index");
  op->add_option("--cap", o.cap, "Bound cap for V");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.name, "Suite name, or all")->required();
  add_common(verify, o);

  auto* table = app.add_subcommand("table", "Print a coefficient table");
  table->add_option("input", o.input, "Series file ('-' for stdin)");
  add_common(table, o);
  table->add_option("--max-trace", o.max_trace, "Largest trace shown (default: the bound)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*op) return cmd_op(o);
    if (*verify) return cmd_verify(o);
    return cmd_table(o);
  } catch (const Failure& f) {
    std::cerr << "smfp: " << f.message << '\n';
    if (f.exit_code == kExitUsage) std::cerr << app.help();
    return f.exit_code;
  }
}
