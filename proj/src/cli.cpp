#include "weylq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "weylq/obstruction.hpp"

namespace weylq {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";

struct CommonOpts {
  int n = 1;
  std::string format = "text";
  bool structured() const { return format == "structured"; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--n", opts.n, "number of degrees of freedom")->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
}

Json envelope(const std::string& command, const CommonOpts& opts) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["n"] = opts.n;
  return j;
}

std::string linear_form_string(const SymplecticMatrix& S, int row) {
  int n = S.dim();
  std::string out;
  for (int k = 0; k < 2 * n; ++k) {
    const QuadExt& c = S.at(row, k);
    if (c.is_zero()) continue;
    std::string var = (k < n ? "q" : "p");
    if (n > 1) var += std::to_string((k % n) + 1);
    std::string cs = to_string(c);
    if (!out.empty()) out += " + ";
    if (cs == "1") out += var;
    else out += "(" + cs + ")*" + var;
  }
  return out.empty() ? "0" : out;
}

Json witness_json(const SymplecticMatrix& S) {
  Json j;
  int n = S.dim();
  for (int row = 0; row < 2 * n; ++row) {
    std::string var = (row < n ? "q" : "p");
    if (n > 1) var += std::to_string((row % n) + 1);
    j[var] = linear_form_string(S, row);
  }
  return j;
}

Json dirac_json(const DiracReport& r) {
  Json j;
  j["map"] = r.map_name;
  j["algebra"] = r.algebra;
  j["max_degree"] = r.max_degree;
  j["unit_ok"] = r.unit_ok;
  j["pairs_checked"] = r.pairs_checked;
  Json skipped = Json::array();
  for (const auto& s : r.skipped) {
    skipped.push_back({{"f", to_string(s.f)}, {"g", to_string(s.g)},
                       {"bracket", to_string(s.bracket)}});
  }
  j["skipped"] = skipped;
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"f", to_string(v.f)},
                          {"g", to_string(v.g)},
                          {"expected", to_string(v.expected)},
                          {"actual", to_string(v.actual)},
                          {"residual", to_string(v.residual)}});
  }
  j["violations"] = violations;
  j["verdict"] = r.passed() ? "pass" : "fail";
  return j;
}

int emit(const Json& j, const std::string& text, bool structured, std::ostream& out,
         int status) {
  if (structured) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
  return status;
}

// ---- subcommand handlers ----

int cmd_bracket(const CommonOpts& opts, const std::string& fs, const std::string& gs,
                std::ostream& out) {
  Polynomial f = parse_polynomial(fs, opts.n);
  Polynomial g = parse_polynomial(gs, opts.n);
  Polynomial b = poisson_bracket(f, g);
  Json j = envelope("bracket", opts);
  j["f"] = to_string(f);
  j["g"] = to_string(g);
  j["result"] = to_string(b);
  return emit(j, to_string(b) + "\n", opts.structured(), out, 0);
}

int cmd_quantize(const CommonOpts& opts, const std::string& map_name, const std::string& eta_s,
                 const std::string& expr, std::ostream& out) {
  Rational eta = parse_rational(eta_s);
  QuantizationMap Q = map_by_name(map_name, opts.n, eta);
  Polynomial f = parse_polynomial(expr, opts.n);
  WeylElement img = apply_map(Q, f);
  Json j = envelope("quantize", opts);
  j["map"] = map_name;
  if (map_name == "sigma") j["eta"] = to_string(eta);
  j["input"] = to_string(f);
  j["result"] = to_string(img);
  return emit(j, to_string(img) + "\n", opts.structured(), out, 0);
}

int cmd_commutator(const CommonOpts& opts, const std::string& as, const std::string& bs,
                   std::ostream& out) {
  WeylElement a = parse_weyl(as, opts.n);
  WeylElement b = parse_weyl(bs, opts.n);
  WeylElement c = commutator(a, b);
  Json j = envelope("commutator", opts);
  j["a"] = to_string(a);
  j["b"] = to_string(b);
  j["result"] = to_string(c);
  return emit(j, to_string(c) + "\n", opts.structured(), out, 0);
}

int cmd_adjoint(const CommonOpts& opts, const std::string& as, std::ostream& out) {
  WeylElement a = parse_weyl(as, opts.n);
  WeylElement adj = formal_adjoint(a);
  Json j = envelope("adjoint", opts);
  j["input"] = to_string(a);
  j["result"] = to_string(adj);
  return emit(j, to_string(adj) + "\n", opts.structured(), out, 0);
}

int cmd_check_dirac(const CommonOpts& opts, const std::string& map_name,
                    const std::string& eta_s, const std::string& algebra, int max_degree,
                    std::ostream& out) {
  Rational eta = parse_rational(eta_s);
  QuantizationMap Q = map_by_name(map_name, opts.n, eta);
  SubalgebraSpec S = parse_algebra_name(algebra, opts.n);
  DiracReport r = check_dirac(Q, S, max_degree);
  Json j = envelope("check-dirac", opts);
  if (map_name == "sigma") j["eta"] = to_string(eta);
  j.update(dirac_json(r));
  std::string text = "map=" + r.map_name + " algebra=" + r.algebra +
                     " max-degree=" + std::to_string(r.max_degree) + ": " +
                     (r.passed() ? "PASS" : "FAIL") + " (" +
                     std::to_string(r.pairs_checked) + " pairs, " +
                     std::to_string(r.violations.size()) + " violations, " +
                     std::to_string(r.skipped.size()) + " skipped)\n";
  for (const auto& v : r.violations) {
    text += "violation: f=" + to_string(v.f) + " g=" + to_string(v.g) +
            "\n  Q({f,g})          = " + to_string(v.expected) +
            "\n  (i/hbar)[Qf,Qg]   = " + to_string(v.actual) +
            "\n  residual          = " + to_string(v.residual) + "\n";
  }
  return emit(j, text, opts.structured(), out, r.passed() ? 0 : 1);
}

int cmd_groenewold(const CommonOpts& opts, std::ostream& out) {
  ObstructionCertificate cert = groenewold_certificate();
  Json j = envelope("obstruction groenewold", opts);
  j["classical_route_a"] = to_string(cert.route_a_classical);
  j["classical_route_b"] = to_string(cert.route_b_classical);
  j["classical_match"] = cert.classical_match;
  j["common_value"] = to_string(cert.common_value);
  j["route_a"] = to_string(cert.route_a_value);
  j["route_b"] = to_string(cert.route_b_value);
  j["residual"] = to_string(cert.residual);
  j["verdict"] = cert.contradiction() ? "obstruction" : "consistent";
  std::string text;
  text += "classical: 1/9*{q^3,p^3} = 1/3*{q^2*p,p^2*q} = " + to_string(cert.common_value) +
          "\n";
  text += "route A: Q(q^2*p^2) = " + to_string(cert.route_a_value) + "\n";
  text += "route B: Q(q^2*p^2) = " + to_string(cert.route_b_value) + "\n";
  text += "residual: " + to_string(cert.residual) + "\n";
  text += std::string("verdict: ") +
          (cert.contradiction() ? "obstruction (routes disagree)" : "consistent") + "\n";
  return emit(j, text, opts.structured(), out, cert.contradiction() ? 1 : 0);
}

int cmd_extend(const CommonOpts& opts, int ansatz_degree, const std::string& hbar_s,
               bool restrict_p2, std::ostream& out) {
  HbarMode mode = HbarMode::formal;
  Rational hbar_value(1);
  if (hbar_s != "formal") {
    mode = HbarMode::rational;
    hbar_value = parse_rational(hbar_s);
  }
  ExtensionReport r = extension_infeasibility(ansatz_degree, mode, hbar_value, restrict_p2);
  Json j = envelope("obstruction extend", opts);
  j["ansatz_degree"] = r.ansatz_degree;
  j["hbar"] = (mode == HbarMode::formal) ? "formal" : to_string(hbar_value);
  j["restrict_p2"] = r.restrict_p2;
  j["unknowns"] = r.unknown_count;
  j["constraints"] = r.constraint_rows;
  j["rank"] = r.rank;
  j["verdict"] = r.feasible ? "feasible" : "infeasible";
  if (r.feasible) {
    j["freedom"] = r.freedom;
    Json sol = Json::object();
    for (const auto& [m, img] : r.solution) {
      sol[monomial_to_string(m)] = to_string(img);
    }
    j["solution"] = sol;
  } else {
    Json w = Json::array();
    for (const auto& e : r.witness) {
      w.push_back({{"constraint", e.constraint}, {"multiplier", e.multiplier}});
    }
    j["witness"] = w;
    j["witness_residual"] = r.witness_residual;
    j["witness_verified"] = r.witness_verified;
  }
  j["notes"] = r.notes;

  std::string text = "ansatz degree " + std::to_string(r.ansatz_degree) + ", hbar " +
                     (mode == HbarMode::formal ? std::string("formal") : to_string(hbar_value)) +
                     (r.restrict_p2 ? ", restricted to the quadratic sector" : "") + "\n";
  text += "unknowns: " + std::to_string(r.unknown_count) +
          ", constraints: " + std::to_string(r.constraint_rows) +
          ", rank: " + std::to_string(r.rank) + "\n";
  if (r.feasible) {
    text += "verdict: feasible (freedom " + std::to_string(r.freedom) + ")\n";
    for (const auto& [m, img] : r.solution) {
      text += "  Q(" + monomial_to_string(m) + ") = " + to_string(img) + "\n";
    }
  } else {
    text += "verdict: infeasible\n";
    text += "witness combination (0 = " + r.witness_residual + "):\n";
    for (const auto& e : r.witness) {
      text += "  " + e.multiplier + "  *  " + e.constraint + "\n";
    }
    text += std::string("witness re-evaluates exactly: ") +
            (r.witness_verified ? "yes" : "NO") + "\n";
  }
  return emit(j, text, opts.structured(), out, r.feasible ? 0 : 1);
}

Json spec_json(const SubalgebraSpec& S) {
  Json j;
  j["name"] = S.name();
  if (!S.named) {
    Json span = Json::array();
    for (const auto& f : S.span) span.push_back(to_string(f));
    j["span"] = span;
    j["degree_bound"] = S.degree_bound;
  }
  return j;
}

SubalgebraSpec algebra_from_flags(const CommonOpts& opts, const std::string& algebra,
                                  const std::vector<std::string>& span_exprs,
                                  int degree_bound) {
  if (!algebra.empty() && !span_exprs.empty()) {
    throw CLI::ValidationError("--algebra and --span are mutually exclusive");
  }
  if (!algebra.empty()) return parse_algebra_name(algebra, opts.n);
  if (span_exprs.empty()) {
    throw CLI::ValidationError("one of --algebra or --span is required");
  }
  std::vector<Polynomial> polys;
  for (const auto& s : span_exprs) polys.push_back(parse_polynomial(s, opts.n));
  return SubalgebraSpec::make_spanned(std::move(polys), degree_bound);
}

int cmd_algebra_closure(const CommonOpts& opts, const SubalgebraSpec& S, int degree,
                        std::ostream& out) {
  ClosureReport r = closure_check(S, degree);
  Json j = envelope("algebra closure", opts);
  j["algebra"] = spec_json(S);
  j["max_degree"] = r.max_degree;
  j["pairs_checked"] = r.pairs_checked;
  j["closed"] = r.closed();
  Json v = Json::array();
  for (const auto& viol : r.violations) {
    v.push_back({{"f", to_string(viol.f)}, {"g", to_string(viol.g)},
                 {"bracket", to_string(viol.bracket)}});
  }
  j["violations"] = v;
  std::string text = r.algebra + " at degree " + std::to_string(degree) + ": " +
                     (r.closed() ? "closed" : "not closed") + " (" +
                     std::to_string(r.pairs_checked) + " pairs)\n";
  for (const auto& viol : r.violations) {
    text += "  {" + to_string(viol.f) + ", " + to_string(viol.g) + "} = " +
            to_string(viol.bracket) + " is outside\n";
  }
  return emit(j, text, opts.structured(), out, r.closed() ? 0 : 1);
}

int cmd_algebra_member(const CommonOpts& opts, const SubalgebraSpec& S,
                       const std::string& expr, std::ostream& out) {
  Polynomial f = parse_polynomial(expr, opts.n);
  bool member = membership(f, S);
  Json j = envelope("algebra member", opts);
  j["algebra"] = spec_json(S);
  j["polynomial"] = to_string(f);
  j["member"] = member;
  std::string text = to_string(f) + (member ? " is a member of " : " is not a member of ") +
                     S.name() + "\n";
  return emit(j, text, opts.structured(), out, member ? 0 : 1);
}

int cmd_algebra_generate(const CommonOpts& opts, const SubalgebraSpec& S, int degree,
                         int seed_degree, const std::vector<std::string>& adjoin,
                         std::ostream& out) {
  std::vector<Polynomial> seed = subalgebra_basis(S, seed_degree);
  for (const auto& s : adjoin) seed.push_back(parse_polynomial(s, opts.n));
  GenerationResult r = bracket_generate(seed, degree);
  Json j = envelope("algebra generate", opts);
  j["seed_algebra"] = spec_json(S);
  j["seed_degree"] = seed_degree;
  Json adj = Json::array();
  for (const auto& s : adjoin) adj.push_back(to_string(parse_polynomial(s, opts.n)));
  j["adjoined"] = adj;
  j["degree_bound"] = r.degree_bound;
  j["dimension"] = r.dimension;
  j["discarded_brackets"] = r.discarded_brackets;
  int full = static_cast<int>(monomial_basis(opts.n, 0, degree).size());
  j["ambient_dimension"] = full;
  j["generates_ambient"] = (r.dimension == full);
  Json basis = Json::array();
  for (const auto& b : r.basis) basis.push_back(to_string(b));
  j["basis"] = basis;
  std::string text = "generated subspace of degree <= " + std::to_string(degree) +
                     ": dimension " + std::to_string(r.dimension) + " of " +
                     std::to_string(full) +
                     (r.dimension == full ? " (full)" : "") + "; " +
                     std::to_string(r.discarded_brackets) +
                     " brackets exceeded the bound\n";
  return emit(j, text, opts.structured(), out, 0);
}

int cmd_algebra_classify(const CommonOpts& opts, const std::vector<std::string>& span_exprs,
                         std::ostream& out) {
  std::vector<Polynomial> basis;
  for (const auto& s : span_exprs) basis.push_back(parse_polynomial(s, opts.n));
  QuadraticClassification r = classify_quadratic_span(basis);
  Json j = envelope("algebra classify", opts);
  j["tag"] = to_string(r.tag);
  j["input_dimension"] = r.input_dimension;
  j["closure_dimension"] = r.closure_dimension;
  if (r.dependency_value) j["dependency_value"] = to_string(*r.dependency_value);
  else j["dependency_value"] = nullptr;
  if (r.witness) j["witness"] = witness_json(*r.witness);
  else j["witness"] = nullptr;
  std::string text = "classification: " + to_string(r.tag) + " (input dim " +
                     std::to_string(r.input_dimension) + ", closure dim " +
                     std::to_string(r.closure_dimension) + ")\n";
  if (r.dependency_value) {
    text += "dependency scalar: " + to_string(*r.dependency_value) + "\n";
  }
  if (r.witness) {
    text += "witness substitution:\n";
    for (int row = 0; row < 2 * r.witness->dim(); ++row) {
      std::string var = row < r.witness->dim() ? "q" : "p";
      text += "  " + var + " -> " + linear_form_string(*r.witness, row) + "\n";
    }
  }
  return emit(j, text, opts.structured(), out, 0);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Poisson/Weyl quantization workbench"};
  app.require_subcommand(1);

  // bracket
  CommonOpts bracket_opts;
  std::string bracket_f, bracket_g;
  CLI::App* bracket = app.add_subcommand("bracket", "Poisson bracket of two polynomials");
  add_common(bracket, bracket_opts);
  bracket->add_option("f", bracket_f)->required();
  bracket->add_option("g", bracket_g)->required();

  // quantize
  CommonOpts quant_opts;
  std::string quant_map, quant_eta = "0", quant_expr;
  CLI::App* quantize = app.add_subcommand("quantize", "apply a quantization map");
  add_common(quantize, quant_opts);
  quantize->add_option("--map", quant_map)->required()
      ->check(CLI::IsMember({"schrodinger", "metaplectic", "sigma", "weyl"}));
  CLI::Option* quant_eta_opt = quantize->add_option("--eta", quant_eta);
  quantize->add_option("expr", quant_expr)->required();

  // commutator
  CommonOpts comm_opts;
  std::string comm_a, comm_b;
  CLI::App* comm = app.add_subcommand("commutator", "commutator of two operator expressions");
  add_common(comm, comm_opts);
  comm->add_option("a", comm_a)->required();
  comm->add_option("b", comm_b)->required();

  // adjoint
  CommonOpts adj_opts;
  std::string adj_a;
  CLI::App* adj = app.add_subcommand("adjoint", "formal adjoint of an operator expression");
  add_common(adj, adj_opts);
  adj->add_option("a", adj_a)->required();

  // check-dirac
  CommonOpts dirac_opts;
  std::string dirac_map, dirac_eta = "0", dirac_algebra;
  int dirac_degree = 2;
  CLI::App* dirac = app.add_subcommand("check-dirac", "bracket-condition check over a subalgebra");
  add_common(dirac, dirac_opts);
  dirac->add_option("--map", dirac_map)->required()
      ->check(CLI::IsMember({"schrodinger", "metaplectic", "sigma", "weyl"}));
  CLI::Option* dirac_eta_opt = dirac->add_option("--eta", dirac_eta);
  dirac->add_option("--algebra", dirac_algebra)->required();
  dirac->add_option("--max-degree", dirac_degree)->required()->check(CLI::NonNegativeNumber);

  // obstruction
  CLI::App* obstruction = app.add_subcommand("obstruction", "obstruction certificates");
  obstruction->require_subcommand(1);
  CommonOpts groen_opts;
  CLI::App* groen = obstruction->add_subcommand("groenewold", "the cubic bracket-identity clash");
  add_common(groen, groen_opts);
  CommonOpts ext_opts;
  int ext_degree = 6;
  std::string ext_hbar = "formal";
  bool ext_restrict = false;
  CLI::App* extend = obstruction->add_subcommand("extend", "linear infeasibility of extensions");
  add_common(extend, ext_opts);
  extend->add_option("--ansatz-degree", ext_degree);
  extend->add_option("--hbar", ext_hbar, "formal or a rational value a/b");
  extend->add_flag("--restrict-p2", ext_restrict, "constrain pairs within degree <= 2 only");

  // algebra
  CLI::App* algebra = app.add_subcommand("algebra", "subalgebra tooling");
  algebra->require_subcommand(1);

  CommonOpts clos_opts;
  std::string clos_algebra;
  std::vector<std::string> clos_span;
  int clos_degree = 8;
  CLI::App* closure = algebra->add_subcommand("closure", "bracket-closure check");
  add_common(closure, clos_opts);
  closure->add_option("--algebra", clos_algebra);
  closure->add_option("--span", clos_span)->type_size(1)->allow_extra_args(false);
  closure->add_option("--degree", clos_degree)->check(CLI::NonNegativeNumber);

  CommonOpts memb_opts;
  std::string memb_algebra, memb_expr;
  std::vector<std::string> memb_span;
  int memb_degree = 8;
  CLI::App* member = algebra->add_subcommand("member", "membership test");
  add_common(member, memb_opts);
  member->add_option("--algebra", memb_algebra);
  member->add_option("--span", memb_span)->type_size(1)->allow_extra_args(false);
  member->add_option("--degree", memb_degree);
  member->add_option("expr", memb_expr)->required();

  CommonOpts gen_opts;
  std::string gen_algebra;
  std::vector<std::string> gen_span, gen_adjoin;
  int gen_degree = 4, gen_seed_degree = -1;
  CLI::App* generate = algebra->add_subcommand("generate", "degree-bounded bracket generation");
  add_common(generate, gen_opts);
  generate->add_option("--algebra", gen_algebra);
  generate->add_option("--span", gen_span)->type_size(1)->allow_extra_args(false);
  generate->add_option("--adjoin", gen_adjoin, "extra generators")->type_size(1)->allow_extra_args(false);
  generate->add_option("--degree", gen_degree)->check(CLI::NonNegativeNumber);
  generate->add_option("--seed-degree", gen_seed_degree,
                       "degree cutoff for the seed basis (defaults to --degree)");

  CommonOpts cls_opts;
  std::vector<std::string> cls_span;
  CLI::App* classify = algebra->add_subcommand("classify", "quadratic span classification");
  add_common(classify, cls_opts);
  classify->add_option("--span", cls_span)->required()->type_size(1)->allow_extra_args(false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (bracket->parsed()) return cmd_bracket(bracket_opts, bracket_f, bracket_g, out);
    if (quantize->parsed()) {
      if (quant_eta_opt->count() > 0 && quant_map != "sigma") {
        err << "usage error: --eta only applies to the sigma map\n";
        return 2;
      }
      if (quant_map == "sigma" && quant_eta_opt->count() == 0) {
        err << "usage error: the sigma map requires --eta a/b\n";
        return 2;
      }
      return cmd_quantize(quant_opts, quant_map, quant_eta, quant_expr, out);
    }
    if (comm->parsed()) return cmd_commutator(comm_opts, comm_a, comm_b, out);
    if (adj->parsed()) return cmd_adjoint(adj_opts, adj_a, out);
    if (dirac->parsed()) {
      if (dirac_eta_opt->count() > 0 && dirac_map != "sigma") {
        err << "usage error: --eta only applies to the sigma map\n";
        return 2;
      }
      if (dirac_map == "sigma" && dirac_eta_opt->count() == 0) {
        err << "usage error: the sigma map requires --eta a/b\n";
        return 2;
      }
      return cmd_check_dirac(dirac_opts, dirac_map, dirac_eta, dirac_algebra, dirac_degree,
                             out);
    }
    if (groen->parsed()) return cmd_groenewold(groen_opts, out);
    if (extend->parsed()) return cmd_extend(ext_opts, ext_degree, ext_hbar, ext_restrict, out);
    if (closure->parsed()) {
      SubalgebraSpec S = algebra_from_flags(clos_opts, clos_algebra, clos_span, clos_degree);
      return cmd_algebra_closure(clos_opts, S, clos_degree, out);
    }
    if (member->parsed()) {
      SubalgebraSpec S = algebra_from_flags(memb_opts, memb_algebra, memb_span, memb_degree);
      return cmd_algebra_member(memb_opts, S, memb_expr, out);
    }
    if (generate->parsed()) {
      SubalgebraSpec S = algebra_from_flags(gen_opts, gen_algebra, gen_span, gen_degree);
      int seed_degree = gen_seed_degree >= 0 ? gen_seed_degree : gen_degree;
      return cmd_algebra_generate(gen_opts, S, gen_degree, seed_degree, gen_adjoin, out);
    }
    if (classify->parsed()) return cmd_algebra_classify(cls_opts, cls_span, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace weylq
