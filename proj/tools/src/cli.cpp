#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "halfcube/chain_complex.hpp"
#include "halfcube/face.hpp"
#include "halfcube/face_table.hpp"
#include "halfcube/io.hpp"
#include "halfcube/morse.hpp"
#include "halfcube/parallel.hpp"
#include "halfcube/snf.hpp"
#include "halfcube/subcomplex.hpp"
#include "json.hpp"

namespace halfcube::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Context {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
  std::ostream* data = nullptr;

  void log(const std::string& message) const {
    if (cfg.verbosity > 0) err << message << '\n';
  }
};

int require_n(const RunConfig& cfg) {
  if (!cfg.n) throw UsageError(cfg.command + " needs --n");
  const int n = *cfg.n;
  if (n < kMinAmbientDim || n > kMaxAmbientDim) {
    throw UsageError("--n must be in [" + std::to_string(kMinAmbientDim) + ", " + std::to_string(kMaxAmbientDim) +
                     "], got " + std::to_string(n));
  }
  return n;
}

int require_k(const RunConfig& cfg, int n) {
  if (!cfg.k) throw UsageError(cfg.command + " needs --k");
  const int k = *cfg.k;
  if (k < 3 || k >= n) {
    throw UsageError("--k must satisfy 3 <= k < n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return k;
}

void require_oracle_size(const RunConfig& cfg, int n) {
  if (n > kOracleCap && !cfg.force) {
    throw UsageError("oracle runs are capped at n <= " + std::to_string(kOracleCap) + "; pass --force to override");
  }
}

std::vector<bool> without_big_halfcubes(const FaceTable& table, int k) {
  std::vector<bool> members(table.size());
  for (FaceId id = 0; id < table.size(); ++id) {
    const FaceKind kind = classify(table.face(id));
    members[id] = !(kind.shape == Shape::kHalfCube && kind.dim >= k);
  }
  return members;
}

int result(Context& ctx, bool pass, const std::string& detail) {
  ctx.out << "RESULT " << (pass ? "pass" : "fail") << ' ' << ctx.cfg.command << ' ' << detail << '\n';
  return pass ? kExitOk : kExitFail;
}

std::string n_tag(int n) { return "n=" + std::to_string(n); }

// ---------------------------------------------------------------------------

int cmd_enum(Context& ctx) {
  const int n = require_n(ctx.cfg);
  if (ctx.cfg.dim && (*ctx.cfg.dim < -1 || *ctx.cfg.dim > n)) {
    throw UsageError("--dim must be in [-1, n]");
  }
  const FaceTable table = enumerate_faces(n);

  const int lo = ctx.cfg.dim.value_or(-1);
  const int hi = ctx.cfg.dim.value_or(n);
  if (ctx.cfg.format == Format::kCsv) *ctx.data << "seq,dim,kind\n";
  for (int d = lo; d <= hi; ++d) {
    for (const FaceSeq& f : table.faces(d)) {
      if (ctx.cfg.format == Format::kCsv) {
        const FaceKind kind = classify(f);
        *ctx.data << f.text() << ',' << kind.dim << ',' << shape_name(kind.shape) << '\n';
      } else {
        *ctx.data << io::face_line(f) << '\n';
      }
    }
  }

  bool pass = true;
  std::size_t listed = 0;
  ctx.out << "dim,simplex,halfcube,total,expected,status\n";
  for (int d = lo; d <= hi; ++d) {
    std::size_t simplex = 0;
    std::size_t halfcube = 0;
    for (const FaceSeq& f : table.faces(d)) {
      const Shape shape = classify(f).shape;
      (shape == Shape::kHalfCube ? halfcube : simplex) += 1;
    }
    const ExpectedCounts expected = expected_counts(n, d);
    const bool ok = simplex == expected.simplex && halfcube == expected.halfcube;
    pass = pass && ok;
    listed += simplex + halfcube;
    ctx.out << d << ',' << simplex << ',' << halfcube << ',' << simplex + halfcube << ',' << expected.total() << ','
            << (ok ? "ok" : "MISMATCH") << '\n';
  }
  const std::size_t proper = listed - (lo == -1 ? 1 : 0);
  return result(ctx, pass, n_tag(n) + " faces=" + std::to_string(listed) + " proper=" + std::to_string(proper));
}

// ---------------------------------------------------------------------------

int match_single(Context& ctx, int n) {
  // The rules only look at the sequence itself, so its length wins over --n.
  const std::string& text = *ctx.cfg.face;
  if (text != "EMPTY" && static_cast<int>(text.size()) != n) {
    ctx.err << "note: --face has " << text.size() << " symbols; using n=" << text.size() << '\n';
    n = static_cast<int>(text.size());
  }
  FaceSeq f;
  try {
    f = parse_seq(*ctx.cfg.face, n);
  } catch (const FaceError& e) {
    throw UsageError(std::string("--face: ") + e.what());
  }
  const RuleMatch m = match_face(f, n);
  if (ctx.cfg.format == Format::kCsv) {
    *ctx.data << "face,partner,rule\n" << f.text() << ',' << m.partner.text() << ',' << m.rule << '\n';
  } else {
    nlohmann::ordered_json j;
    j["face"] = f.text();
    j["partner"] = m.partner.text();
    j["rule"] = m.rule;
    *ctx.data << j.dump() << '\n';
  }
  ctx.out << "partner: " << m.partner.text() << ", rule: " << m.rule << '\n';
  if (!ctx.cfg.verify) return result(ctx, true, n_tag(n) + " face=" + f.text());

  std::vector<std::string> problems;
  const std::vector<int> rules = rule_applicability(f);
  if (rules != std::vector<int>{m.rule}) problems.emplace_back("rule applicability is not exactly {" + std::to_string(m.rule) + "}");
  const RuleMatch back = match_face(m.partner, n);
  if (back.partner != f) problems.emplace_back("partner maps to " + back.partner.text());
  const int df = classify(f).dim;
  const int dp = classify(m.partner).dim;
  const FaceSeq& big = df > dp ? f : m.partner;
  const FaceSeq& small = df > dp ? m.partner : f;
  if (std::abs(df - dp) != 1 || incidence(big, small) == 0) problems.emplace_back("pair is not a codimension-1 incidence");
  for (const auto& p : problems) ctx.out << "violation: " << p << '\n';
  return result(ctx, problems.empty(), n_tag(n) + " face=" + f.text());
}

int cmd_match(Context& ctx) {
  const int n = require_n(ctx.cfg);
  if (ctx.cfg.face) return match_single(ctx, n);

  const FaceTable table = enumerate_faces(n);
  const FaceLattice lattice(table);
  MorseMatching matching;
  try {
    matching = build_matching(table, lattice);
  } catch (const MatchingError& e) {
    ctx.out << "violation: " << to_string(e.code()) << ": " << e.what() << '\n';
    return result(ctx, false, n_tag(n));
  }

  const bool dump = !ctx.cfg.verify || !ctx.cfg.out_path.empty();
  if (dump) {
    if (ctx.cfg.format == Format::kCsv) {
      *ctx.data << "face,partner,rule\n";
      for (FaceId id = 0; id < table.size(); ++id) {
        *ctx.data << table.face(id).text() << ',';
        if (matching.is_paired(id)) *ctx.data << table.face(matching.partner(id)).text() << ',' << matching.rule(id);
        else *ctx.data << ',';
        *ctx.data << '\n';
      }
    } else {
      io::write_matching(*ctx.data, matching, table);
    }
  }

  std::size_t pairs = 0;
  std::size_t unpaired = 0;
  for (FaceId id = 0; id < table.size(); ++id) {
    if (!matching.is_paired(id)) ++unpaired;
    else if (id < matching.partner(id)) ++pairs;
  }
  bool pass = true;
  if (const auto violation = check_matching(matching, table, lattice, true)) {
    ctx.out << "violation: " << to_string(violation->code) << ": " << violation->message << '\n';
    pass = false;
  }

  std::string cycles = "unchecked";
  if (ctx.cfg.verify) {
    for (FaceId id = 0; id < table.size() && pass; ++id) {
      const std::vector<int> rules = rule_applicability(table.face(id));
      if (rules.size() != 1 || rules.front() != matching.rule(id)) {
        ctx.out << "violation: exclusivity: " << table.face(id).text() << " satisfies " << rules.size()
                << " rule conditions\n";
        pass = false;
      }
    }
    const AcyclicityReport report = verify_acyclic(matching, table, lattice);
    cycles = "none";
    for (const LayerReport& layer : report.layers) {
      if (!layer.cycle) continue;
      cycles = "layer " + std::to_string(layer.p);
      std::string walk;
      for (const FaceSeq& f : *layer.cycle) walk += (walk.empty() ? "" : " -> ") + f.text();
      ctx.out << "violation: cycle in layer " << layer.p << ": " << walk << '\n';
      pass = false;
      break;
    }
  }
  ctx.out << "pairs: " << pairs << ", unpaired: " << unpaired << ", cycles: " << cycles << '\n';
  return result(ctx, pass, n_tag(n) + " pairs=" + std::to_string(pairs));
}

// ---------------------------------------------------------------------------

int cmd_basis(Context& ctx) {
  const int n = require_n(ctx.cfg);
  const int k = require_k(ctx.cfg, n);
  if (ctx.cfg.certify) require_oracle_size(ctx.cfg, n);

  const FaceTable table = enumerate_faces(n);
  const FaceLattice lattice(table);
  const ChainComplex complex(table, ctx.cfg.jobs);
  const MorseMatching matching = build_matching(table, lattice);
  const SubcomplexSpec spec = build_subcomplex(k, table, lattice, matching);
  const HomologyBasis basis = homology_basis(spec, complex);

  if (ctx.cfg.format == Format::kCsv) {
    *ctx.data << "bface,face,coeff\n";
    for (std::size_t i = 0; i < basis.faces.size(); ++i) {
      for (const auto& [index, coeff] : basis.chains[i].terms()) {
        *ctx.data << basis.faces[i].text() << ',' << table.face(table.id(basis.degree, index)).text() << ','
                  << coeff.str() << '\n';
      }
    }
  } else {
    io::write_basis(*ctx.data, basis, table);
  }

  const BigInt expected = betti_eq12(n, k);
  bool pass = BigInt(basis.faces.size()) == expected;
  ctx.out << "chains: " << basis.faces.size() << ", degree: " << basis.degree << ", expected: " << expected.str()
          << '\n';
  if (ctx.cfg.certify) {
    const IndependenceVerdict v = class_independence(basis.chains, complex, spec.members);
    ctx.out << "cycle rank: " << v.cycle_rank << ", boundary rank: " << v.boundary_rank
            << ", combined rank: " << v.combined_rank << '\n';
    ctx.out << "independent and generating: " << (v.basis() ? "true" : "false") << '\n';
    pass = pass && v.basis();
  }
  return result(ctx, pass, spec.label() + " chains=" + std::to_string(basis.faces.size()));
}

// ---------------------------------------------------------------------------

struct BettiRow {
  int n = 0;
  int k = 0;
  BigInt eq11;
  BigInt eq12;
  std::optional<std::size_t> unmatched;
  std::optional<std::size_t> oracle;
  bool oracle_clean = true;  // torsion-free and concentrated in degree k-1

  bool agrees() const {
    if (eq11 != eq12) return false;
    if (unmatched && BigInt(*unmatched) != eq12) return false;
    if (oracle && (BigInt(*oracle) != eq12 || !oracle_clean)) return false;
    return true;
  }
};

void fill_rows_for_n(const RunConfig& cfg, int n, std::vector<BettiRow>& rows) {
  const bool want_unmatched = n <= kUnmatchedCap || cfg.force;
  const bool want_oracle = cfg.oracle && (n <= kOracleCap || cfg.force);
  if (!want_unmatched && !want_oracle) return;
  if (n > kMaxAmbientDim) return;

  const FaceTable table = enumerate_faces(n);
  const FaceLattice lattice(table);
  std::optional<MorseMatching> matching;
  if (want_unmatched) matching = build_matching(table, lattice);
  std::unique_ptr<ChainComplex> complex;
  if (want_oracle) complex = std::make_unique<ChainComplex>(table, cfg.jobs);

  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    BettiRow& row = rows[i];
    if (row.k >= n) return;
    if (matching) row.unmatched = build_subcomplex(row.k, table, lattice, *matching).unmatched.size();
    if (complex) {
      const HomologyReport report = homology(*complex, without_big_halfcubes(table, row.k), true);
      row.oracle = report.betti(row.k - 1);
      for (const HomologyEntry& e : report.degrees) {
        if (!e.torsion.empty() || (e.degree != row.k - 1 && e.betti != 0)) row.oracle_clean = false;
      }
    }
  });
}

int cmd_betti(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  int n_lo = 4;
  int n_hi = 0;
  if (cfg.n_max) {
    n_hi = *cfg.n_max;
    if (cfg.n) n_lo = *cfg.n;
  } else if (cfg.n) {
    n_lo = n_hi = *cfg.n;
  } else {
    throw UsageError("betti needs --n or --n-max");
  }
  if (n_lo < 3 || n_hi < n_lo) throw UsageError("invalid n range");
  if (cfg.k && (*cfg.k < 3 || *cfg.k > n_hi)) throw UsageError("--k out of range");
  if (cfg.oracle && n_hi > kOracleCap && !cfg.force) {
    ctx.err << "note: oracle column left empty for n > " << kOracleCap << " (use --force)\n";
  }

  std::vector<std::vector<BettiRow>> per_n;
  for (int n = n_lo; n <= n_hi; ++n) {
    std::vector<BettiRow> rows;
    const int k_hi = cfg.include_k_eq_n ? n : n - 1;
    for (int k = 3; k <= k_hi; ++k) {
      if (cfg.k && k != *cfg.k) continue;
      rows.push_back({n, k, betti_eq11(n, k), betti_eq12(n, k), std::nullopt, std::nullopt, true});
    }
    Timer timer;
    fill_rows_for_n(cfg, n, rows);
    ctx.log("n=" + std::to_string(n) + " rows done in " + std::to_string(timer.seconds()) + " s");
    per_n.push_back(std::move(rows));
  }

  const auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  if (cfg.format == Format::kCsv) *ctx.data << "n,k,eq11,eq12,unmatched_count,oracle_rank\n";
  std::size_t total = 0;
  std::size_t bad = 0;
  for (const auto& rows : per_n) {
    for (const BettiRow& row : rows) {
      ++total;
      if (!row.agrees()) {
        ++bad;
        ctx.err << "disagreement at n=" << row.n << " k=" << row.k << '\n';
      }
      if (cfg.format == Format::kCsv) {
        *ctx.data << row.n << ',' << row.k << ',' << row.eq11.str() << ',' << row.eq12.str() << ','
                  << opt(row.unmatched) << ',' << opt(row.oracle) << '\n';
      } else {
        nlohmann::ordered_json j;
        j["n"] = row.n;
        j["k"] = row.k;
        j["eq11"] = row.eq11.str();
        j["eq12"] = row.eq12.str();
        j["unmatched_count"] = row.unmatched ? nlohmann::ordered_json(*row.unmatched) : nullptr;
        j["oracle_rank"] = row.oracle ? nlohmann::ordered_json(*row.oracle) : nullptr;
        *ctx.data << j.dump() << '\n';
      }
    }
  }
  return result(ctx, bad == 0, "rows=" + std::to_string(total) + " disagreements=" + std::to_string(bad));
}

// ---------------------------------------------------------------------------

int cmd_acyclic(Context& ctx) {
  const int n = require_n(ctx.cfg);
  const FaceTable table = enumerate_faces(n);
  const FaceLattice lattice(table);
  const MorseMatching matching = build_matching(table, lattice);
  const AcyclicityReport report = verify_acyclic(matching, table, lattice);
  *ctx.data << io::acyclicity_json(report) << '\n';
  return result(ctx, report.acyclic(), n_tag(n) + " layers=" + std::to_string(report.layers.size()));
}

int cmd_homology(Context& ctx) {
  const int n = require_n(ctx.cfg);
  require_oracle_size(ctx.cfg, n);
  const FaceTable table = enumerate_faces(n);
  const ChainComplex complex(table, ctx.cfg.jobs);

  std::vector<bool> members;
  std::string label;
  int expected_degree = -2;  // no nonzero homology expected
  std::size_t expected_rank = 0;
  if (ctx.cfg.k) {
    const int k = require_k(ctx.cfg, n);
    members = without_big_halfcubes(table, k);
    label = "C_{" + std::to_string(n) + "," + std::to_string(k) + "}";
    expected_degree = k - 1;
    expected_rank = static_cast<std::size_t>(betti_eq12(n, k));
  } else if (ctx.cfg.verify) {
    // boundary of the top cell: a sphere of dimension n-1
    members.assign(table.size(), true);
    members[table.id(n, 0)] = false;
    label = "boundary_" + std::to_string(n);
    expected_degree = n - 1;
    expected_rank = 1;
  } else {
    members.assign(table.size(), true);
    label = "full_" + std::to_string(n);
  }
  const HomologyReport report = homology(complex, members, true, label);
  *ctx.data << io::homology_json(report) << '\n';

  bool pass = report.torsion_free();
  for (const HomologyEntry& e : report.degrees) {
    pass = pass && e.betti == (e.degree == expected_degree ? expected_rank : 0);
  }
  return result(ctx, pass, label);
}

int cmd_boundary(Context& ctx) {
  const int n = require_n(ctx.cfg);
  if (!ctx.cfg.dim) throw UsageError("boundary needs --dim");
  const int d = *ctx.cfg.dim;
  if (d < 0 || d > n) throw UsageError("--dim must be in [0, n]");
  const FaceTable table = enumerate_faces(n);
  const BoundaryMatrix m = boundary_matrix(table, d, ctx.cfg.jobs);
  if (ctx.cfg.format == Format::kCsv) {
    *ctx.data << "row,col,val\n";
    for (std::size_t col = 0; col < m.cols(); ++col) {
      for (const auto& e : m.column(col)) *ctx.data << e.row << ',' << col << ',' << int(e.value) << '\n';
    }
  } else {
    io::write_boundary(*ctx.data, m, n);
  }
  return result(ctx, true, n_tag(n) + " dim=" + std::to_string(d) + " nonzeros=" + std::to_string(m.nonzeros()));
}

int dispatch(Context& ctx) {
  const std::string& c = ctx.cfg.command;
  if (c == "enum") return cmd_enum(ctx);
  if (c == "match") return cmd_match(ctx);
  if (c == "basis") return cmd_basis(ctx);
  if (c == "betti") return cmd_betti(ctx);
  if (c == "acyclic") return cmd_acyclic(ctx);
  if (c == "homology") return cmd_homology(ctx);
  if (c == "boundary") return cmd_boundary(ctx);
  throw UsageError("a subcommand is required");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Half-cube cell complex: faces, Morse matching, homology bases and Betti numbers"};
  app.name("halfcube");
  app.fallthrough();
  app.require_subcommand(1);

  int n = 0;
  int k = 0;
  int dim = 0;
  int n_max = 0;
  std::string face;
  std::string format = "jsonl";
  auto* n_opt = app.add_option("--n", n, "Ambient dimension");
  auto* k_opt = app.add_option("--k", k, "Subcomplex parameter");
  auto* dim_opt = app.add_option("--dim", dim, "Restrict to one dimension");
  auto* face_opt = app.add_option("--face", face, "Single face sequence (or EMPTY)");
  auto* n_max_opt = app.add_option("--n-max", n_max, "Upper end of the n range for betti");
  app.add_flag("--verify", cfg.verify, "Run all verification checks");
  app.add_flag("--certify", cfg.certify, "Certify the basis with the Smith normal form oracle");
  app.add_flag("--oracle", cfg.oracle, "Fill the oracle column");
  app.add_flag("--force", cfg.force, "Lift the size caps");
  app.add_flag("--include-k-eq-n", cfg.include_k_eq_n, "Add rows with k = n");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_option("--out", cfg.out_path, "Write data to this file");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", cfg.verbosity, "Progress on stderr");

  app.add_subcommand("enum", "List faces and compare counts with the classification");
  app.add_subcommand("match", "Dump and verify the Morse matching");
  app.add_subcommand("basis", "Homology basis of the subcomplex C_{n,k}");
  app.add_subcommand("betti", "Betti number table");
  app.add_subcommand("acyclic", "Acyclicity report of the matching");
  app.add_subcommand("homology", "Homology of C_{n,k}, the full complex or its boundary (--verify)");
  app.add_subcommand("boundary", "Sparse boundary matrix in one dimension");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  if (*n_opt) cfg.n = n;
  if (*k_opt) cfg.k = k;
  if (*dim_opt) cfg.dim = dim;
  if (*face_opt) cfg.face = face;
  if (*n_max_opt) cfg.n_max = n_max;
  cfg.format = format == "csv" ? Format::kCsv : Format::kJsonl;
  cfg.command = app.get_subcommands().front()->get_name();

  Context ctx{cfg, out, err};
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "usage error: cannot open " << cfg.out_path << '\n';
      return kExitUsage;
    }
    ctx.data = &file;
  } else {
    ctx.data = &out;
  }

  try {
    return dispatch(ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FaceError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SubcomplexError& e) {
    if (e.code() == SubcomplexError::Code::kBadRange) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
    out << "violation: " << e.what() << '\n';
    return result(ctx, false, "");
  } catch (const std::exception& e) {
    out << "violation: " << e.what() << '\n';
    return result(ctx, false, "");
  }
}

}  // namespace halfcube::cli
