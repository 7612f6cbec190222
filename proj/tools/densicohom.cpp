// densicohom: exact H^1(sl(2), D_{lambda,mu}) from the command line.
//
// Subcommands: dim, basis, verify, oracle, scan, matrix.
// Exit codes: 0 success, 2 usage error, 3 verification failure,
//             4 oracle mismatch, 5 oracle non-stabilization, 1 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <densicohom/densicohom.hpp>

namespace {

using namespace densicohom;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFailure = 3;
constexpr int kExitOracleMismatch = 4;
constexpr int kExitNotStabilized = 5;

struct CommonOptions {
  std::size_t n = 0;
  std::string lambda_csv;
  std::string mu_text;
  std::string delta_text;
  std::string out_path;
  std::string format;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Rational> parse_lambda_list(const std::string& csv, std::size_t n) {
  const auto parts = split(csv, ',');
  if (parts.size() != n)
    throw invalid_parameter("--lambda needs exactly " + std::to_string(n) +
                            " comma-separated rationals");
  std::vector<Rational> lambda;
  for (const auto& p : parts) lambda.push_back(parse_rational(p));
  return lambda;
}

ParamSpace params_from(const CommonOptions& opt) {
  if (opt.n == 0) throw invalid_parameter("--n must be positive");
  auto lambda = parse_lambda_list(opt.lambda_csv, opt.n);
  if (opt.mu_text.empty() == opt.delta_text.empty())
    throw invalid_parameter("specify exactly one of --mu and --delta");
  Rational mu;
  if (!opt.mu_text.empty()) {
    mu = parse_rational(opt.mu_text);
  } else {
    mu = parse_rational(opt.delta_text);
    for (const auto& l : lambda) mu += l;
  }
  return ParamSpace(std::move(lambda), std::move(mu));
}

// Output sink: stdout unless --out was given.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw invalid_parameter("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

std::string slot_name(std::size_t n, std::size_t i) {
  if (n == 1) return "f";
  if (n == 2) return i == 0 ? "f" : "g";
  return "f" + std::to_string(i + 1);
}

std::string slot_string(const MultiIndex& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += "⊗";
    s += slot_name(alpha.size(), i);
    if (alpha[i] <= 3)
      s += std::string(static_cast<std::size_t>(alpha[i]), '\'');
    else
      s += "^(" + std::to_string(alpha[i]) + ")";
  }
  return s;
}

std::string pretty_cocycle(const CocycleSymbolic& c) {
  std::string s;
  auto emit = [&s](const Rational& coef, const char* hmark, const MultiIndex& alpha) {
    const bool neg = sgn(coef) < 0;
    const Rational mag = neg ? Rational(-coef) : coef;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    if (mag != 1) s += to_string(mag) + " ";
    s += hmark;
    s += " ";
    s += slot_string(alpha);
  };
  for (const auto& [alpha, coef] : c.B) emit(coef, "h'", alpha);
  for (const auto& [beta, coef] : c.C) emit(coef, "h''", beta);
  return s.empty() ? "0" : s;
}

std::string effective_format(const std::string& given, const char* fallback,
                             std::initializer_list<const char*> allowed) {
  const std::string format = given.empty() ? fallback : given;
  for (const char* a : allowed)
    if (format == a) return format;
  throw invalid_parameter("--format '" + format + "' is not supported by this command");
}

int cmd_dim(const CommonOptions& opt) {
  effective_format(opt.format, "json", {"json"});
  const ParamSpace ps = params_from(opt);
  const CohomologyReport rep = compute(ps);
  if (rep.rank_warning)
    std::cerr << "warning: generic case with rank below N_{k-1}; "
                 "this contradicts the full-rank theorem\n";
  json doc = to_json(rep);
  doc["schema"] = "densicohom/1";
  Sink sink(opt.out_path);
  sink.stream() << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_basis(const CommonOptions& opt) {
  effective_format(opt.format, "json", {"json"});
  const ParamSpace ps = params_from(opt);
  const auto cocycles = basis(ps);
  json list = json::array();
  for (const auto& c : cocycles) {
    json jc = to_json(c);
    jc["pretty"] = pretty_cocycle(c);
    list.push_back(std::move(jc));
  }
  json doc{{"schema", "densicohom/1"},
           {"params", to_json(ps)},
           {"dim_h1", cocycles.size()},
           {"cocycles", std::move(list)}};
  Sink sink(opt.out_path);
  sink.stream() << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const CommonOptions& opt, bool perturb) {
  const std::string format = effective_format(opt.format, "text", {"text", "json"});
  const ParamSpace ps = params_from(opt);
  const CaseTag tag = classify(ps);
  auto cocycles = basis(ps);

  if (perturb && !cocycles.empty()) {
    auto& target = cocycles.front();
    if (!target.B.empty()) {
      target.B.begin()->second += 1;
    } else {
      const auto level_k = enumerate_multiindices(ps.n(), tag.k);
      target.B.emplace(level_k.front(), Rational(1));
    }
  }

  json results = json::array();
  bool all_pass = true;
  Sink sink(opt.out_path);
  for (std::size_t i = 0; i < cocycles.size(); ++i) {
    const bool closed = differential1(realize(cocycles[i], ps)).is_zero();
    std::string nontrivial = "skipped";
    if (closed) {
      try {
        nontrivial = is_trivial(cocycles[i], ps).trivial ? "fail" : "pass";
      } catch (const not_a_cocycle&) {
        nontrivial = "fail";
      }
    }
    const bool ok = closed && nontrivial == "pass";
    all_pass = all_pass && ok;
    if (format == "text")
      sink.stream() << "element " << (i + 1) << ": closed=" << (closed ? "pass" : "fail")
                    << " nontrivial=" << nontrivial << "\n";
    results.push_back(json{{"index", i + 1},
                           {"closed", closed},
                           {"nontrivial", nontrivial},
                           {"pretty", pretty_cocycle(cocycles[i])}});
  }
  if (format == "text") {
    sink.stream() << (all_pass ? "all checks passed" : "verification FAILED") << " ("
                  << cocycles.size() << (cocycles.size() == 1 ? " basis element)" : " basis elements)")
                  << "\n";
  } else {
    json doc{{"schema", "densicohom/1"},
             {"params", to_json(ps)},
             {"perturbed", perturb},
             {"elements", std::move(results)},
             {"all_passed", all_pass}};
    sink.stream() << doc.dump(2) << "\n";
  }
  return all_pass ? kExitOk : kExitVerifyFailure;
}

struct OracleFlags {
  long max_order = -1;
  long max_degree = -1;
  long margin = -1;
  int max_steps = 5;
};

int cmd_oracle(const CommonOptions& opt, const OracleFlags& flags) {
  effective_format(opt.format, "json", {"json"});
  const ParamSpace ps = params_from(opt);
  TruncationBox box = default_box(ps);
  if (flags.max_order >= 0) box.max_order = flags.max_order;
  if (flags.max_degree >= 0) box.max_degree = flags.max_degree;
  if (flags.margin >= 0) box.source_degree_margin = flags.margin;

  const CohomologyReport engine = compute(ps);
  const OracleOutcome oracle = stabilized_h1(ps, box, flags.max_steps);
  const bool match = oracle.stabilized && Integer(oracle.dim) == engine.dim_h1;

  json doc{{"schema", "densicohom/1"},
           {"params", to_json(ps)},
           {"engine_dim", detail::natural_to_json(engine.dim_h1)},
           {"oracle", to_json(oracle)},
           {"match", match}};
  Sink sink(opt.out_path);
  sink.stream() << doc.dump(2) << "\n";
  if (!oracle.stabilized) {
    std::cerr << "warning: oracle did not stabilize\n";
    return kExitNotStabilized;
  }
  return match ? kExitOk : kExitOracleMismatch;
}

int cmd_scan(const CommonOptions& opt, long k, const std::string& grid_text) {
  const std::string format = effective_format(opt.format, "json", {"json", "csv"});
  if (opt.n == 0) throw invalid_parameter("--n must be positive");
  if (k < 0) throw invalid_parameter("--k must be non-negative");
  const auto slot_lists = split(grid_text, ';');
  if (slot_lists.size() != opt.n)
    throw invalid_parameter("--grid needs " + std::to_string(opt.n) +
                            " semicolon-separated slot lists");
  std::vector<std::vector<Rational>> grid;
  for (const auto& sl : slot_lists) {
    std::vector<Rational> values;
    for (const auto& v : split(sl, ',')) values.push_back(parse_rational(v));
    grid.push_back(std::move(values));
  }

  Sink sink(opt.out_path);
  std::ostream& os = sink.stream();
  if (format == "csv")
    os << "lambda,delta,resonant,r,rank_lambda,dim_h1,dim_h1_relative,"
          "bound_lower,bound_upper,bounds_satisfied\n";

  // odometer over the grid, slot 1 outermost
  std::vector<std::size_t> pick(opt.n, 0);
  for (bool more = true; more;) {
    std::vector<Rational> lambda;
    for (std::size_t i = 0; i < opt.n; ++i) lambda.push_back(grid[i][pick[i]]);
    Rational mu(k);
    for (const auto& l : lambda) mu += l;
    const ParamSpace ps(lambda, mu);
    const CohomologyReport rep = compute(ps);

    if (format == "csv") {
      std::string lam;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (i) lam += ';';
        lam += to_string(lambda[i]);
      }
      os << lam << ',' << to_string(ps.delta()) << ',' << (rep.tag.resonant ? 1 : 0) << ','
         << (rep.tag.r ? std::to_string(*rep.tag.r) : "") << ',' << rep.rank_lambda.get_str()
         << ',' << rep.dim_h1.get_str() << ',' << rep.dim_h1_relative.get_str() << ','
         << rep.bound_lower.get_str() << ',' << rep.bound_upper.get_str() << ','
         << (rep.bounds_satisfied ? 1 : 0) << "\n";
    } else {
      json row = to_json(rep);
      row["schema"] = "densicohom/1";
      os << row.dump() << "\n";
    }

    more = false;
    for (std::size_t i = opt.n; i-- > 0;) {
      if (++pick[i] < grid[i].size()) {
        more = true;
        break;
      }
      pick[i] = 0;
    }
  }
  return kExitOk;
}

int cmd_matrix(const CommonOptions& opt, long k) {
  const std::string format = effective_format(opt.format, "text", {"text", "json"});
  if (opt.n == 0) throw invalid_parameter("--n must be positive");
  if (k < 0) throw invalid_parameter("--k must be non-negative");
  auto lambda = parse_lambda_list(opt.lambda_csv, opt.n);
  Rational mu(k);
  for (const auto& l : lambda) mu += l;
  const ParamSpace ps(std::move(lambda), std::move(mu));
  const LambdaMatrix lm = build_lambda_matrix(ps, k);

  Sink sink(opt.out_path);
  std::ostream& os = sink.stream();
  if (format == "json") {
    json rows = json::array(), cols = json::array();
    for (const auto& r : lm.row_labels) rows.push_back(to_json(r));
    for (const auto& c : lm.col_labels) cols.push_back(to_json(c));
    json doc{{"schema", "densicohom/1"},
             {"k", k},
             {"row_index", std::move(rows)},
             {"col_index", std::move(cols)},
             {"entries", to_json(lm.matrix)}};
    os << doc.dump(2) << "\n";
    return kExitOk;
  }

  if (k == 0) {
    os << "empty matrix: k = 0 has no constraint rows (0 x " << lm.matrix.cols() << ")\n";
    return kExitOk;
  }
  std::vector<std::size_t> widths(lm.col_labels.size());
  std::vector<std::vector<std::string>> cells(lm.matrix.rows());
  for (std::size_t j = 0; j < lm.col_labels.size(); ++j)
    widths[j] = lm.col_labels[j].str().size();
  std::size_t label_width = 0;
  for (const auto& r : lm.row_labels) label_width = std::max(label_width, r.str().size());
  for (std::size_t i = 0; i < lm.matrix.rows(); ++i) {
    cells[i].resize(lm.matrix.cols());
    for (std::size_t j = 0; j < lm.matrix.cols(); ++j) {
      cells[i][j] = to_string(lm.matrix(i, j));
      widths[j] = std::max(widths[j], cells[i][j].size());
    }
  }
  os << std::string(label_width, ' ');
  for (std::size_t j = 0; j < lm.col_labels.size(); ++j) {
    const std::string s = lm.col_labels[j].str();
    os << "  " << std::string(widths[j] - s.size(), ' ') << s;
  }
  os << "\n";
  for (std::size_t i = 0; i < lm.matrix.rows(); ++i) {
    const std::string lab = lm.row_labels[i].str();
    os << lab << std::string(label_width - lab.size(), ' ');
    for (std::size_t j = 0; j < lm.matrix.cols(); ++j)
      os << "  " << std::string(widths[j] - cells[i][j].size(), ' ') << cells[i][j];
    os << "\n";
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact first cohomology of sl(2) on n-ary differential operators "
               "between weighted-density modules"};
  app.require_subcommand(1);

  CommonOptions opt;
  OracleFlags oracle_flags;
  bool perturb = false;
  long k = 0;
  std::string grid_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "number of tensor slots")->required();
    cmd->add_option("--lambda", opt.lambda_csv, "comma-separated weights, e.g. 1/2,1/2")
        ->required();
    cmd->add_option("--mu", opt.mu_text, "target weight (rational)");
    cmd->add_option("--delta", opt.delta_text, "shift; mu = sum(lambda) + delta");
    cmd->add_option("--out", opt.out_path, "write output to a file instead of stdout");
    cmd->add_option("--format", opt.format, "output format");
  };

  auto* dim = app.add_subcommand("dim", "dimension report at one parameter point");
  add_common(dim);

  auto* bas = app.add_subcommand("basis", "explicit normal-form cocycle basis");
  add_common(bas);

  auto* ver = app.add_subcommand("verify", "closedness and nontriviality of the basis");
  add_common(ver);
  ver->add_flag("--perturb", perturb, "corrupt one B coefficient to exercise the checker");

  auto* ora = app.add_subcommand("oracle", "compare against the truncated brute force");
  add_common(ora);
  ora->add_option("--max-order", oracle_flags.max_order, "initial operator order cap");
  ora->add_option("--max-degree", oracle_flags.max_degree, "initial coefficient degree cap");
  ora->add_option("--margin", oracle_flags.margin, "initial source degree margin");
  ora->add_option("--max-steps", oracle_flags.max_steps, "stabilization schedule length");

  auto* scn = app.add_subcommand("scan", "sweep a weight grid at fixed shift k");
  scn->add_option("--n", opt.n, "number of tensor slots")->required();
  scn->add_option("--k", k, "shift (delta = k at every grid point)")->required();
  scn->add_option("--grid", grid_text,
                  "per-slot weight lists: comma within a slot, semicolon between slots")
      ->required();
  scn->add_option("--out", opt.out_path, "write output to a file instead of stdout");
  scn->add_option("--format", opt.format, "json (lines) or csv");

  auto* mtx = app.add_subcommand("matrix", "print the constraint matrix with its index labels");
  mtx->add_option("--n", opt.n, "number of tensor slots")->required();
  mtx->add_option("--lambda", opt.lambda_csv, "comma-separated weights")->required();
  mtx->add_option("--k", k, "level (rows have degree k-1, columns degree k)")->required();
  mtx->add_option("--out", opt.out_path, "write output to a file instead of stdout");
  mtx->add_option("--format", opt.format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dim->parsed()) return cmd_dim(opt);
    if (bas->parsed()) return cmd_basis(opt);
    if (ver->parsed()) return cmd_verify(opt, perturb);
    if (ora->parsed()) return cmd_oracle(opt, oracle_flags);
    if (scn->parsed()) return cmd_scan(opt, k, grid_text);
    if (mtx->parsed()) return cmd_matrix(opt, k);
  } catch (const invalid_parameter& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
