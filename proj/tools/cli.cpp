#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wachlab/errors.hpp"
#include "wachlab/io/format.hpp"
#include "wachlab/io/report.hpp"
#include "wachlab/padic/membership.hpp"
#include "wachlab/rational/subspace.hpp"

namespace wachlab::cli {

namespace {

using io::Report;
using io::Status;

// Anything wrong with the command line or the input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  int p = 3;
  std::string prec;
  const char* env_prec = nullptr;
  std::string format = "text";
  bool stdin_used = false;

  bool machine() const { return format == "machine"; }
};

std::pair<int, int> parse_pair(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    const int a = std::stoi(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(s);
    const std::string rest = s.substr(comma + 1);
    const int b = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw InputError(std::string(what) + ": expected two integers 'a,b', got '" + s + "'");
  }
}

padic::RingParams ring(const Context& ctx) {
  std::pair<int, int> prec{8, 16};
  if (!ctx.prec.empty()) prec = parse_pair(ctx.prec, "--prec");
  else if (ctx.env_prec && *ctx.env_prec) prec = parse_pair(ctx.env_prec, "WACHLAB_PREC");
  try {
    return padic::RingParams(ctx.p, prec.first, prec.second);
  } catch (const ParameterError& e) {
    throw InputError(e.what());
  }
}

std::string slurp(Context& ctx, const std::string& path) {
  if (path == "-") {
    if (ctx.stdin_used) throw InputError("standard input can be read only once");
    ctx.stdin_used = true;
    std::ostringstream os;
    os << ctx.in.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

template <class F>
auto load(const std::string& path, F&& parse) {
  try {
    return parse();
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

fpn::FilPhiNModule load_filmod(Context& ctx, const std::string& path) {
  const std::string text = slurp(ctx, path);
  return load(path, [&] { return io::parse_filmod(text); });
}

wach::WachModule load_wach(Context& ctx, const std::string& path) {
  const std::string text = slurp(ctx, path);
  return load(path, [&] { return io::parse_wach(text); });
}

int emit(const Context& ctx, const Report& r) {
  ctx.out << (ctx.machine() ? r.render_machine() : r.render_text());
  return r.exit_code();
}

std::string flag_summary(const fpn::Flag& f) {
  std::string out;
  for (const auto& s : f.steps()) {
    if (!out.empty()) out += " | ";
    out += "Fil^" + std::to_string(s.level) + "=<" + io::format_vectors(s.span) + ">";
  }
  return out;
}

std::string matrix_summary(const rational::QMatrix& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    out += r ? ";" : "";
    for (int c = 0; c < m.cols(); ++c) out += (c ? "," : "") + m(r, c).get_str();
  }
  return out + "]";
}

std::string vector_summary(const padic::SeriesVector& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k].to_string();
  return out + ")";
}

Status verdict_status(wach::Verdict v) {
  switch (v) {
    case wach::Verdict::Pass: return Status::Pass;
    case wach::Verdict::Fail: return Status::Fail;
    case wach::Verdict::Undecided: return Status::Undecided;
    case wach::Verdict::NotChecked: return Status::Info;
  }
  return Status::Info;
}

std::string identifier(std::string s) {
  for (char& c : s)
    if (c == ' ' || c == '-') c = '_';
  return s;
}

// Filtered (φ, N)-module verbs.

int fpn_check(Context& ctx, const std::string& path, std::uint64_t seed) {
  const fpn::FilPhiNModule d = load_filmod(ctx, path);
  Report r("fpn-check");
  const long th = fpn::t_h(d);
  const long tn = fpn::t_n(d);
  auto& t = r.add("t_H=t_N", th == tn ? Status::Pass : Status::Fail,
                  "t_H = " + std::to_string(th) + ", t_N = " + std::to_string(tn));
  t.fields = {{"t_H", std::to_string(th)}, {"t_N", std::to_string(tn)}};
  try {
    const fpn::AdmissibilityVerdict v = fpn::is_admissible(d, seed);
    const Status s = v.status == fpn::AdmissibilityStatus::Admissible      ? Status::Pass
                     : v.status == fpn::AdmissibilityStatus::NotAdmissible ? Status::Fail
                                                                           : Status::Undecided;
    auto& item = r.add("weakly_admissible", s, std::string(fpn::to_string(v.status)) +
                                                   (v.reason.empty() ? "" : ": " + v.reason));
    item.fields = {{"verdict", fpn::to_string(v.status)},
                   {"mode", v.exhaustive ? "exhaustive" : "enumerated"},
                   {"candidates", std::to_string(v.enumerated_count)}};
    if (v.witness) item.witness = "<" + io::format_vectors(*v.witness) + ">";
  } catch (const UnsupportedEigenstructure& e) {
    r.add("weakly_admissible", Status::Undecided, e.what());
  }
  const bool griffiths = fpn::griffiths_check(d);
  auto& g = r.add("griffiths", griffiths ? Status::Pass : Status::Fail,
                  griffiths ? "N Fil^i in Fil^(i-1); D is naive" : "N Fil^i not in Fil^(i-1); D is not naive");
  if (!griffiths) g.witness = "hat filtration " + flag_summary(fpn::hat_filtration(d));
  return emit(ctx, r);
}

int fpn_hat(Context& ctx, const std::string& path) {
  const fpn::FilPhiNModule d = load_filmod(ctx, path);
  ctx.out << io::serialize(fpn::FilPhiNModule(d.p(), d.phi(), d.n(), fpn::hat_filtration(d)));
  return io::kPass;
}

int fpn_build(Context& ctx, const std::vector<std::string>& blocks, bool unit) {
  if (blocks.empty() && !unit) throw InputError("fpn-build: give --block i,j (repeatable) or --unit");
  std::vector<fpn::BlockSpec> specs;
  if (unit) specs.push_back({1, 0, 1});
  for (const auto& b : blocks) {
    const auto [i, j] = parse_pair(b, "--block");
    if (i < 1) throw InputError("--block: rank i must be >= 1");
    specs.push_back({i, j, 1});
  }
  try {
    ctx.out << io::serialize(fpn::direct_sum_of_blocks(ctx.p, specs));
  } catch (const ParameterError& e) {
    throw InputError(e.what());
  }
  return io::kPass;
}

int fpn_tensor(Context& ctx, const std::string& a, const std::string& b) {
  const fpn::FilPhiNModule da = load_filmod(ctx, a);
  const fpn::FilPhiNModule db = load_filmod(ctx, b);
  if (da.p() != db.p()) throw InputError("fpn-tensor: modules over different primes");
  ctx.out << io::serialize(fpn::tensor(da, db));
  return io::kPass;
}

int fpn_sym(Context& ctx, const std::string& path, int n) {
  if (n < 1) throw InputError("fpn-sym: --n must be >= 1");
  ctx.out << io::serialize(fpn::sym_power(load_filmod(ctx, path), n));
  return io::kPass;
}

int fpn_twist(Context& ctx, const std::string& path, int j) {
  ctx.out << io::serialize(fpn::twist(load_filmod(ctx, path), j));
  return io::kPass;
}

int fpn_decompose(Context& ctx, const std::string& path) {
  const fpn::FilPhiNModule d = load_filmod(ctx, path);
  Report r("fpn-decompose");
  try {
    const fpn::Decomposition dec = fpn::decompose_standard(d);
    if (const auto* f = std::get_if<fpn::DecompositionFailure>(&dec)) {
      r.add("standard_decomposition", Status::Fail, f->reason);
    } else {
      const auto& blocks = std::get<std::vector<fpn::BlockSpec>>(dec);
      std::string summary;
      for (const auto& b : blocks) {
        const std::string label = "V_" + std::to_string(b.i) + "(" + std::to_string(b.j) + ")";
        summary += (summary.empty() ? "" : " + ") + (b.mult > 1 ? std::to_string(b.mult) + "*" : "") + label;
      }
      auto& item = r.add("standard_decomposition", Status::Pass, summary);
      item.fields.push_back({"blocks", std::to_string(blocks.size())});
      for (const auto& b : blocks) {
        auto& bi = r.add("block", Status::Info,
                         "i = " + std::to_string(b.i) + ", j = " + std::to_string(b.j) + ", multiplicity " +
                             std::to_string(b.mult));
        bi.fields = {{"i", std::to_string(b.i)}, {"j", std::to_string(b.j)}, {"mult", std::to_string(b.mult)}};
      }
    }
  } catch (const UnsupportedEigenstructure& e) {
    r.add("standard_decomposition", Status::Undecided, e.what());
  }
  return emit(ctx, r);
}

// Wach-module verbs.

int wach_build(Context& ctx, const std::vector<std::string>& blocks, const std::string& ambient) {
  const padic::RingParams params = ring(ctx);
  if (!ambient.empty()) {
    if (!blocks.empty()) throw InputError("wach-build: --block and --log-ambient are exclusive");
    const auto [i, j] = parse_pair(ambient, "--log-ambient");
    if (i < 1 || j < 0) throw InputError("--log-ambient: need i >= 1 and j >= 0");
    ctx.out << io::serialize(wach::build_log_ambient(i, j, params));
    return io::kPass;
  }
  if (blocks.empty()) throw InputError("wach-build: give --block i,j (repeatable) or --log-ambient i,j");
  std::optional<wach::WachModule> acc;
  for (const auto& b : blocks) {
    const auto [i, j] = parse_pair(b, "--block");
    if (i < 1 || j < 0) throw InputError("--block: need i >= 1 and j >= 0");
    wach::WachModule w = wach::build_standard_wach(i, j, params);
    acc = acc ? wach::direct_sum_wach(*acc, w) : w;
  }
  ctx.out << io::serialize(*acc);
  return io::kPass;
}

int wach_check(Context& ctx, const std::string& path) {
  const wach::WachModule w = load_wach(ctx, path);
  const wach::WachReport rep = wach::check_relations(w);
  Report r("wach-check");
  for (const auto& rel : rep.relations) {
    auto& item = r.add("relation_" + identifier(rel.name), rel.holds ? Status::Pass : Status::Fail,
                       rel.holds ? "holds exactly in R"
                                 : "residual valuation (p^" + std::to_string(rel.residual.p_digits) + ", X^" +
                                       std::to_string(rel.residual.x_order) + ")");
    item.fields = {{"p_digits", std::to_string(rel.residual.p_digits)},
                   {"x_order", std::to_string(rel.residual.x_order)}};
  }
  r.add("tau_trivial_mod_x", rep.tau_trivial_mod_x ? Status::Pass : Status::Fail);
  r.add("gamma_trivial_mod_x", rep.gamma_trivial_mod_x ? Status::Pass : Status::Fail);
  auto& pos = r.add("positivity", verdict_status(rep.positivity.verdict), rep.positivity.detail);
  if (rep.positivity.s) pos.fields.push_back({"s", std::to_string(*rep.positivity.s)});
  auto& u = r.add("unipotence_index", Status::Info,
                  rep.unipotence_index ? "(T - Id)^" + std::to_string(*rep.unipotence_index) + " = 0"
                                       : "T - Id is not nilpotent");
  if (rep.unipotence_index) u.fields.push_back({"value", std::to_string(*rep.unipotence_index)});
  auto& m = r.add("monodromy_nilpotence", Status::Info,
                  rep.monodromy_nilpotence ? "(N mod X)^" + std::to_string(*rep.monodromy_nilpotence) + " = 0"
                                           : "monodromy undefined or not nilpotent");
  if (rep.monodromy_nilpotence) m.fields.push_back({"value", std::to_string(*rep.monodromy_nilpotence)});
  return emit(ctx, r);
}

int wach_reduce(Context& ctx, const std::string& path) {
  const wach::WachModule w = load_wach(ctx, path);
  ctx.out << io::serialize(wach::reduce_mod_X(w));
  return io::kPass;
}

int wach_verify(Context& ctx, const std::string& path, const std::string& against) {
  const wach::WachModule w = load_wach(ctx, path);
  const fpn::FilPhiNModule d = load_filmod(ctx, against);
  const wach::VerifyResult v = wach::verify_wach(w, d);
  Report r("wach-verify");
  for (const auto& it : v.items) r.add(it.name, verdict_status(it.verdict), it.detail);
  return emit(ctx, r);
}

int wach_monodromy(Context& ctx, const std::string& path) {
  const wach::WachModule w = load_wach(ctx, path);
  Report r("wach-monodromy");
  try {
    const wach::Monodromy m = wach::monodromy(w);
    rational::QMatrix n0(w.rank(), w.rank());
    const auto c = m.n.mod_x();
    for (int i = 0; i < w.rank(); ++i)
      for (int k = 0; k < w.rank(); ++k)
        n0(i, k) = mpq_class(static_cast<long>(padic::symmetric_lift(c[static_cast<std::size_t>(i * w.rank() + k)],
                                                                     w.params().p(), m.p_digits)));
    auto& item = r.add("monodromy", Status::Pass,
                       "N mod X = " + matrix_summary(n0) + " at p^" + std::to_string(m.p_digits) + ", X^" +
                           std::to_string(m.x_order));
    item.fields = {{"n_mod_x", matrix_summary(n0)},
                   {"p_digits", std::to_string(m.p_digits)},
                   {"x_order", std::to_string(m.x_order)}};
    auto& nil = r.add("nilpotent_mod_x", m.nilpotence_mod_x ? Status::Pass : Status::Fail,
                      m.nilpotence_mod_x ? "index " + std::to_string(*m.nilpotence_mod_x) : "N mod X is not nilpotent");
    if (m.nilpotence_mod_x) nil.fields.push_back({"index", std::to_string(*m.nilpotence_mod_x)});
    const wach::ExpCheck ex = wach::exp_check(w);
    auto& e = r.add("tau=exp(XN)", ex.holds ? Status::Pass : Status::Fail, ex.detail);
    e.fields = {{"p_digits", std::to_string(ex.p_digits)}, {"x_order", std::to_string(ex.x_order)}};
  } catch (const NotUnipotent& e) {
    r.add("monodromy", Status::Fail, e.what());
  } catch (const PrecisionError& e) {
    r.add("monodromy", Status::Undecided, e.what());
  }
  return emit(ctx, r);
}

int wach_envelope(Context& ctx, const std::string& path, const std::string& span, std::optional<int> n) {
  const wach::WachModule w = load_wach(ctx, path);
  const padic::RingParams& params = w.params();
  rational::QMatrix m;
  try {
    m = io::parse_vectors(span, w.rank());
  } catch (const ParseError& e) {
    throw InputError(std::string("--span: ") + e.what());
  }
  std::vector<padic::SeriesVector> gens;
  for (int c = 0; c < m.cols(); ++c) {
    padic::SeriesVector v;
    for (int k = 0; k < m.rows(); ++k) {
      const mpq_class& x = m(k, c);
      if (mpz_divisible_ui_p(x.get_den_mpz_t(), static_cast<unsigned long>(params.p())))
        throw InputError("--span: entries must be p-adic integers");
      const padic::Residue num = padic::reduce(mpz_class(x.get_num()), params);
      const padic::Residue den = padic::inverse_unit(padic::reduce(mpz_class(x.get_den()), params), params);
      v.push_back(padic::TruncSeries::constant(params, static_cast<long long>(kernels::mulmod(num, den, params.modulus()))));
    }
    gens.push_back(std::move(v));
  }
  const int index = n.value_or(w.rank() - 1);
  if (index < 0) throw InputError("--n must be >= 0");
  Report r("wach-envelope");
  try {
    const wach::Envelope env = wach::naive_envelope(w.tau(), gens, index, w.gamma(), w.chi0());
    auto& rank = r.add("rank", Status::Info, std::to_string(env.generators.size()) + " generators at p^" +
                                                 std::to_string(env.p_digits));
    rank.fields = {{"value", std::to_string(env.generators.size())}, {"p_digits", std::to_string(env.p_digits)}};
    r.add("free", env.independent ? Status::Pass : Status::Fail,
          env.independent ? "generators independent up to truncation" : "generators carry a relation");
    r.add("tau_trivial", env.tau_trivial ? Status::Pass : Status::Fail, "(T - Id) out in X out");
    r.add("gamma_stable", *env.gamma_stable ? Status::Pass : Status::Fail, "G out in out");
    r.add("gamma_trivial_mod_x", *env.gamma_trivial_mod_x ? Status::Pass : Status::Fail, "(G - Id) out in X out");
    auto& lat = r.add("lattice_r", env.r ? Status::Pass : Status::Fail,
                      env.r ? "X^" + std::to_string(*env.r) + " (log tau)^-" + std::to_string(index) + "(M) in out"
                            : "no r up to Mx");
    if (env.r) lat.fields.push_back({"r", std::to_string(*env.r)});
    for (const auto& g : env.generators) r.add("generator", Status::Info, vector_summary(g));
  } catch (const NotUnipotent& e) {
    r.add("envelope", Status::Fail, e.what());
  } catch (const PrecisionError& e) {
    r.add("envelope", Status::Undecided, e.what());
  }
  return emit(ctx, r);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const char* env_prec) {
  Context ctx{in, out, err};
  ctx.env_prec = env_prec;

  CLI::App app{"Filtered (phi, N)-modules and Wach modules"};
  app.name("wachlab");
  app.require_subcommand(1);
  app.add_option("--p", ctx.p, "prime used by builders")->capture_default_str();
  app.add_option("--prec", ctx.prec, "p-adic and X-adic precision Np,Mx (default 8,16 or $WACHLAB_PREC)");
  app.add_option("--format", ctx.format, "report format")->check(CLI::IsMember({"text", "machine"}));

  std::function<int()> action;
  auto verb = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  std::string input = "-";
  std::string second;
  std::vector<std::string> blocks;
  std::string ambient;
  std::string against;
  std::string span;
  std::optional<int> index;
  int number = 0;
  bool unit = false;
  std::uint64_t seed = 0x5eed;

  auto* s = verb("fpn-check", "t_H = t_N, weak admissibility and Griffiths transversality");
  s->add_option("input", input, "filmod file or - for stdin");
  s->add_option("--seed", seed, "seed for the randomized subobject search");
  s->callback([&] { action = [&] { return fpn_check(ctx, input, seed); }; });

  s = verb("fpn-hat", "replace the filtration by its hat filtration");
  s->add_option("input", input, "filmod file or -");
  s->callback([&] { action = [&] { return fpn_hat(ctx, input); }; });

  s = verb("fpn-build", "direct sum of standard blocks");
  s->add_option("--block", blocks, "block i,j (repeatable)");
  s->add_flag("--unit", unit, "include the unit object");
  s->callback([&] { action = [&] { return fpn_build(ctx, blocks, unit); }; });

  s = verb("fpn-tensor", "tensor product of two modules");
  s->add_option("first", input, "filmod file or -")->required();
  s->add_option("second", second, "filmod file or -")->required();
  s->callback([&] { action = [&] { return fpn_tensor(ctx, input, second); }; });

  s = verb("fpn-sym", "symmetric power");
  s->add_option("input", input, "filmod file or -");
  s->add_option("--n", number, "exponent")->required();
  s->callback([&] { action = [&] { return fpn_sym(ctx, input, number); }; });

  s = verb("fpn-twist", "Tate twist: phi scaled by p^-j, levels shifted by -j");
  s->add_option("input", input, "filmod file or -");
  s->add_option("--j", number, "twist")->required();
  s->callback([&] { action = [&] { return fpn_twist(ctx, input, number); }; });

  s = verb("fpn-decompose", "decompose into standard blocks");
  s->add_option("input", input, "filmod file or -");
  s->callback([&] { action = [&] { return fpn_decompose(ctx, input); }; });

  s = verb("wach-build", "standard Wach modules and their direct sums");
  s->add_option("--block", blocks, "block i,j with j >= 0 (repeatable)");
  s->add_option("--log-ambient", ambient, "ambient i,j for wach-envelope");
  s->callback([&] { action = [&] { return wach_build(ctx, blocks, ambient); }; });

  s = verb("wach-check", "commutation relations, triviality mod X, positivity");
  s->add_option("input", input, "wach file or -");
  s->callback([&] { action = [&] { return wach_check(ctx, input); }; });

  s = verb("wach-reduce", "N / X N as a filtered (phi, N)-module");
  s->add_option("input", input, "wach file or -");
  s->callback([&] { action = [&] { return wach_reduce(ctx, input); }; });

  s = verb("wach-verify", "check a Wach module against a filtered (phi, N)-module");
  s->add_option("input", input, "wach file or -");
  s->add_option("--against", against, "filmod file")->required();
  s->callback([&] { action = [&] { return wach_verify(ctx, input, against); }; });

  s = verb("wach-monodromy", "(1/X) log tau and tau = exp(X N)");
  s->add_option("input", input, "wach file or -");
  s->callback([&] { action = [&] { return wach_monodromy(ctx, input); }; });

  s = verb("wach-envelope", "module generated by X^i (log tau)^-i (M)");
  s->add_option("input", input, "wach file or -");
  s->add_option("--span", span, "constant generators of M, e.g. 1,0;0,1")->required();
  s->add_option("--n", index, "largest i (default rank - 1)");
  s->callback([&] { action = [&] { return wach_envelope(ctx, input, span, index); }; });

  std::vector<std::string> argv_store{"wachlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return io::kPass;
  } catch (const CLI::ParseError& e) {
    err << "wachlab: " << e.what() << '\n';
    return io::kInputError;
  }

  try {
    return action();
  } catch (const InputError& e) {
    err << "wachlab: " << e.what() << '\n';
    return io::kInputError;
  } catch (const CLI::Error& e) {
    err << "wachlab: " << e.what() << '\n';
    return io::kInputError;
  } catch (const PrecisionError& e) {
    err << "wachlab: precision exhausted: " << e.what() << '\n';
    return io::kUndecided;
  } catch (const UnsupportedEigenstructure& e) {
    err << "wachlab: " << e.what() << '\n';
    return io::kUndecided;
  } catch (const Error& e) {
    err << "wachlab: " << e.what() << '\n';
    return io::kFail;
  }
}

}  // namespace wachlab::cli
