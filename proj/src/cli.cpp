#include "dsq/cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dsq/ds_frontend.hpp"
#include "dsq/error.hpp"
#include "dsq/json_io.hpp"
#include "dsq/orbit_solver.hpp"
#include "dsq/pencil.hpp"
#include "dsq/quiver.hpp"
#include "dsq/rep_lab.hpp"
#include "dsq/squid_symplectic.hpp"

namespace dsq {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

namespace {

struct Flags {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<int> starts;
  std::optional<int> max_iter;
  std::int64_t budget = kDefaultDecompositionBudget;
  std::string json_out;
  bool quiet = false;
  std::string input;
  std::string options_file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json forms_section(const Quiver& q, const DimVector& a, const std::optional<StarShape>& shape) {
  Json f = {{"q", tits_q(q, a)},
            {"p", p_value(q, a)},
            {"fundamental", in_fundamental_region(q, a)},
            {"root_class", to_string(classify_root(q, a))}};
  f["delta"] = shape ? Json(delta(*shape, a)) : Json(nullptr);
  return f;
}

// {"quiver": {...}} or {"w": [...]}, plus "alpha".
std::pair<Quiver, std::optional<StarShape>> quiver_of(const Json& j) {
  if (j.contains("quiver")) return {quiver_from_json(j.at("quiver")), std::nullopt};
  StarShape s = star_shape_from_json(j);
  return {build_star(s), s};
}

struct Outcome {
  Json report;
  int exit = kExitOk;
};

Outcome cmd_verdict(const Json& in) {
  const DSInstance inst = instance_from_json(in);
  return {{{"verdict", verdict_to_json(verdict(inst))}}};
}

Outcome cmd_solve(const Json& in, const Flags& flags) {
  const DSInstance inst = instance_from_json(in.contains("instance") ? in.at("instance") : in);
  require(inst.mode != Mode::Connection, ErrorCode::InvalidArgument, "solve handles additive and multiplicative instances");
  SolverOptions opts;
  opts.seed = flags.seed;
  if (in.contains("options")) opts = solver_options_from_json(in.at("options"), opts);
  if (!flags.options_file.empty()) opts = solver_options_from_json(parse_json(read_file(flags.options_file)), opts);
  if (flags.tol) opts.tol = *flags.tol;
  if (flags.starts) opts.starts = *flags.starts;
  if (flags.max_iter) opts.max_iter = *flags.max_iter;
  require(opts.starts >= 1 && opts.max_iter >= 0 && opts.tol >= 0, ErrorCode::InvalidArgument,
          "solver options out of range");

  const Verdict v = verdict(inst);
  SolverResult r = inst.mode == Mode::Additive ? solve_additive(inst, opts) : solve_multiplicative(inst, opts);
  Json report = {{"verdict", verdict_to_json(v)}, {"options", solver_options_to_json(opts)}};
  if (!r.converged) {
    report["solver"] = solver_result_to_json(r);
    report["certified"] = false;
    return {report, kExitNotConverged};
  }
  tangent_dimension(r, inst);
  const double cert_tol = opts.tol > 0 ? std::max(std::sqrt(opts.tol), 1e-12) : 1e-8;
  report["solver"] = solver_result_to_json(r);
  report["certified"] = certify(r, inst, cert_tol);
  return {report};
}

Outcome cmd_forms(const Json& in) {
  const auto [q, shape] = quiver_of(in);
  const DimVector a = dims_from_json(in.at("alpha"), q);
  Json f = forms_section(q, a, shape);
  if (shape) f["dim_flag"] = dim_flag_product(a, *shape);
  return {{{"forms", f}}};
}

Outcome cmd_roots(const Json& in) {
  const auto [q, shape] = quiver_of(in);
  const DimVector a = dims_from_json(in.at("alpha"), q);
  return {{{"forms", forms_section(q, a, shape)}}};
}

Outcome cmd_decomp(const Json& in, const Flags& flags) {
  const StarShape shape = star_shape_from_json(in);
  const Quiver q = build_star(shape);
  const DimVector a = dims_from_json(in.at("alpha"), q);
  const InequalityCheck c = check_inequality_302(shape, a, flags.budget);
  Json d = {{"holds", c.holds},
            {"decompositions_checked", c.decompositions_checked},
            {"delta", delta(shape, a)},
            {"fundamental", in_fundamental_region(q, a)},
            {"p", p_value(q, a)}};
  d["witness"] = c.witness ? decomposition_to_json(q, *c.witness) : Json(nullptr);
  return {{{"decomposition", d}}};
}

Outcome cmd_splitting(const Json& in) {
  const KroneckerPencil p = pencil_from_json(in);
  const bool pre = p.w() <= kMaxMinorSize ? is_preinjective(p) : true;
  require(pre, ErrorCode::NotPreinjective, "the pencil drops rank at some point of the projective line");
  const SplittingType st = splitting_type(p);
  const BundleInvariants inv = bundle_invariants(p);
  Json s = splitting_to_json(st);
  s["rank"] = inv.rank;
  s["degree"] = inv.degree;
  s["dual_globally_generated"] = inv.dual_globally_generated;
  return {{{"splitting", s}}};
}

Outcome cmd_census(const Json& in, const Flags& flags) {
  const auto [q, shape] = quiver_of(in);
  const DimVector a = dims_from_json(in.at("alpha"), q);
  const auto samples = in.value("samples", std::size_t{100});
  const int pool = in.value("pool", kDefaultCensusPool);
  require(samples >= 1 && pool >= 1, ErrorCode::InvalidArgument, "samples and pool must be positive");
  return {{{"census", census_to_json(parameter_census(q, a, samples, flags.seed, pool))}}};
}

Outcome cmd_moment_residual(const Json& in) {
  const StarShape shape = star_shape_from_json(in);
  const DimVector star_alpha = dims_from_json(in.at("alpha"), build_star(shape));
  std::vector<std::vector<Complex>> zeta;
  for (const Json& row : in.at("zeta")) {
    std::vector<Complex> r;
    for (const Json& z : row) r.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    zeta.push_back(std::move(r));
  }
  const auto N = in.value("N", std::int64_t{0});
  const ThetaN th = theta_N(zeta, shape, star_alpha, N);

  Json point = {{"w", shape.w}};
  const std::vector<VertexId> ids = squid_vertex_ids(shape);
  Json dims = Json::object();
  for (std::size_t v = 0; v < ids.size(); ++v) dims[ids[v]] = th.squid_dims[v];
  point["dims"] = dims;
  if (in.contains("arrows")) point["arrows"] = in.at("arrows");
  const CotangentSquidPoint x = squid_point_from_json(point);

  Json theta = Json::object();
  for (std::size_t v = 0; v < ids.size(); ++v) {
    theta[ids[v]] = Json::array({th.target.theta[v].real(), th.target.theta[v].imag()});
  }
  const Complex trace = th.target.weighted_trace(th.squid_dims);
  Json m = {{"residual", residual(x, th.target)},
            {"theta", theta},
            {"squid_dims", dims},
            {"alpha_inf", th.alpha_inf},
            {"weighted_trace", Json::array({trace.real(), trace.imag()})}};
  return {{{"moment", m}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deligne-Simpson and squid-quiver toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--seed", flags.seed, "master seed")->capture_default_str();
  app.add_option("--tol", flags.tol, "solver tolerance on the squared residual");
  app.add_option("--starts", flags.starts, "solver starts");
  app.add_option("--max-iter", flags.max_iter, "solver iterations per start");
  app.add_option("--budget", flags.budget, "entry-sum bound for decomposition enumeration")->capture_default_str();
  app.add_option("--json-out", flags.json_out, "write the report here instead of stdout");
  app.add_flag("--quiet", flags.quiet, "suppress diagnostics");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verdict", "sufficient-criterion verdict for an instance"},
      {"solve", "construct a numerical solution and certify its dimension"},
      {"forms", "Tits form, p, delta and root class of a dimension vector"},
      {"roots", "root classification of a dimension vector"},
      {"decomp-check", "brute-force p(a) > sum p(parts) over decompositions"},
      {"splitting", "splitting type of the kernel bundle of a pencil"},
      {"census", "stabilizer-dimension census of random representations"},
      {"moment-residual", "distance from mu(X) to the theta^N target"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", flags.input, "input JSON file")->required();
    if (name == "solve") sub->add_option("--options", flags.options_file, "solver options JSON");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (!flags.quiet) err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  const auto t0 = std::chrono::steady_clock::now();
  Outcome outcome;
  std::string digest;
  try {
    const std::string text = read_file(flags.input);
    digest = sha256_hex(text);
    const Json in = parse_json(text);
    if (command == "verdict") outcome = cmd_verdict(in);
    else if (command == "solve") outcome = cmd_solve(in, flags);
    else if (command == "forms") outcome = cmd_forms(in);
    else if (command == "roots") outcome = cmd_roots(in);
    else if (command == "decomp-check") outcome = cmd_decomp(in, flags);
    else if (command == "splitting") outcome = cmd_splitting(in);
    else if (command == "census") outcome = cmd_census(in, flags);
    else outcome = cmd_moment_residual(in);
  } catch (const Error& e) {
    if (!flags.quiet) err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NotConverged ? kExitNotConverged : kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    if (!flags.quiet) err << "error: ParseError: " << e.what() << "\n";
    return kExitInvalid;
  }
  const auto t1 = std::chrono::steady_clock::now();

  Json report = std::move(outcome.report);
  report["command"] = command;
  report["input_digest"] = digest;
  report["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  const std::string text = dump_json(report) + "\n";
  if (flags.json_out.empty()) {
    out << text;
  } else {
    std::ofstream f(flags.json_out, std::ios::binary);
    if (!f) {
      if (!flags.quiet) err << "error: cannot write " << flags.json_out << "\n";
      return kExitInvalid;
    }
    f << text;
  }
  if (outcome.exit == kExitNotConverged && !flags.quiet) err << "solver did not converge\n";
  return outcome.exit;
}

}  // namespace dsq
