// Command-line front end: evaluation, class polynomials, Galois orbits,
// ray class generators and the numeric verification suites, all with JSON
// output. Exit codes: 0 ok, 2 usage, 3 precision exhausted, 4 class number
// unsupported, 5 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "cm/class_poly.hpp"

using json = nlohmann::json;
using namespace cm;

namespace {

long env_max_bits() {
  const char* s = std::getenv("CM_MODULI_MAX_BITS");
  if (!s) return 8192;
  long v = std::atol(s);
  return v >= 128 ? v : 8192;
}

PrecisionContext make_ctx(long bits) {
  PrecisionContext ctx;
  ctx.working_bits = bits;
  ctx.max_bits = std::max(env_max_bits(), bits);
  ctx.validate();
  return ctx;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q(s);
  q.canonicalize();
  return q;
}

FrickeIndex parse_index(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error("index must look like r1,r2 e.g. 0,1/2");
  return FrickeIndex(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

BigComplex parse_tau(const std::string& s, long prec) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error("tau must look like re,im");
  return BigComplex(BigReal::from_string(s.substr(0, comma), prec),
                    BigReal::from_string(s.substr(comma + 1), prec));
}

std::string decimal(const BigReal& x, long bits) {
  return x.str(static_cast<size_t>(bits / 3.3) + 2);
}

std::optional<std::string> recognize_str(const BigComplex& v, const PrecisionContext& ctx) {
  if (!v.imag().below_2pow(-ctx.guard_bits)) return std::nullopt;
  if (auto n = try_recognize_integer(v.real(), ctx)) return n->get_str();
  if (auto q = try_recognize_rational(v.real(), 100000000UL, ctx)) {
    return q->get_num().get_str() + "/" + q->get_den().get_str();
  }
  return std::nullopt;
}

json value_json(const BigComplex& v, const PrecisionContext& ctx) {
  json out;
  out["value_re"] = decimal(v.real(), ctx.working_bits);
  out["value_im"] = decimal(v.imag(), ctx.working_bits);
  out["bits"] = ctx.working_bits;
  if (auto r = recognize_str(v, ctx)) out["recognized"] = *r;
  return out;
}

json poly_json(const IntPolynomial& p, long disc, std::optional<long> level,
               const PrecisionContext& ctx) {
  json out;
  out["disc"] = disc;
  if (level)
    out["level"] = *level;
  else
    out["level"] = nullptr;
  json coeffs = json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(c.get_str());
  out["coeffs"] = coeffs;
  out["monic"] = p.monic;
  out["bits"] = ctx.working_bits;
  return out;
}

void emit(const json& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream f(path);
    f << out.dump(2) << "\n";
  }
}

struct RandomModel {
  std::mt19937_64 rng;

  explicit RandomModel(unsigned long seed) : rng(seed) {}

  BigComplex tau(long prec) {
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.3, 3.0);
    return BigComplex(BigReal::from_double(re(rng), prec), BigReal::from_double(im(rng), prec));
  }

  FrickeIndex index(long max_den) {
    std::uniform_int_distribution<long> den(2, max_den);
    long N = den(rng);
    std::uniform_int_distribution<long> num(0, N - 1);
    long a = num(rng), b = num(rng);
    if (a == 0 && b == 0) b = 1;
    return FrickeIndex(mpq_class(a, N), mpq_class(b, N));
  }

  std::array<long, 4> sl2() {
    // short random word in the standard generators
    long a = 1, b = 0, c = 0, d = 1;
    std::uniform_int_distribution<int> len(1, 6), shift(-3, 3), coin(0, 1);
    int L = len(rng);
    for (int i = 0; i < L; ++i) {
      if (coin(rng)) {
        long n = shift(rng);  // T^n
        b += a * n;
        d += c * n;
      } else {  // S
        std::swap(a, b);
        std::swap(c, d);
        a = -a;
        c = -c;
      }
    }
    return {a, b, c, d};
  }
};

int run_verify(const std::string& suite, long disc, long level, long samples, long bits,
               const std::string& out_path) {
  PrecisionContext ctx = make_ctx(bits);
  json checks = json::array();
  bool all_ok = true;
  long rel_bits = ctx.working_bits - ctx.guard_bits;

  auto add = [&](const std::string& name, bool ok, json extra = json::object()) {
    extra["name"] = name;
    extra["passed"] = ok;
    checks.push_back(extra);
    all_ok = all_ok && ok;
  };

  RandomModel rnd(20260824);
  long p = ctx.tail_bits() + 32;

  if (suite == "transform" || suite == "all") {
    for (long i = 0; i < samples; ++i) {
      auto g = rnd.sl2();
      auto x = rnd.index(12);
      Tau tau(rnd.tau(p));
      BigComplex lhs = eval_fricke(x, 1, Tau(moebius(g, tau.tau)), ctx, FrickeRoute::Weierstrass);
      BigComplex rhs = eval_fricke(x.transformed(g[0], g[1], g[2], g[3]), 1, tau, ctx,
                                   FrickeRoute::Weierstrass);
      bool ok = agree_to_bits(lhs, rhs, rel_bits);
      add("transform[" + std::to_string(i) + "]", ok,
          {{"residual", (lhs - rhs).abs().str(8)}});
    }
  }
  if (suite == "relations" || suite == "all") {
    for (long i = 0; i < samples; ++i) {
      auto x = rnd.index(12);
      Tau tau(rnd.tau(p));
      BigComplex j = eval_j(tau, ctx);
      if (j.abs().below_2pow(4) ||
          (j - BigComplex::from_long(1728, 0, p)).abs().below_2pow(4))
        continue;  // singular neighborhood, series relation not applicable
      BigComplex f2s = eval_fricke(x, 2, tau, ctx, FrickeRoute::Series);
      BigComplex f2w = eval_fricke(x, 2, tau, ctx, FrickeRoute::Weierstrass);
      BigComplex f3s = eval_fricke(x, 3, tau, ctx, FrickeRoute::Series);
      BigComplex f3w = eval_fricke(x, 3, tau, ctx, FrickeRoute::Weierstrass);
      bool ok = agree_to_bits(f2s, f2w, rel_bits) && agree_to_bits(f3s, f3w, rel_bits);
      add("relations[" + std::to_string(i) + "]", ok);
    }
  }
  if (suite == "kernel" || suite == "all") {
    Discriminant d{disc};
    long k = unit_count(d) / 2;
    FrickeIndex base(mpq_class(0), mpq_class(1, level));
    Tau th(theta_point(d, ctx).value);
    BigComplex base_val = eval_fricke(base, static_cast<int>(k), th, ctx, FrickeRoute::Weierstrass);
    for (const auto& kappa : kernel_set(level, d)) {
      FrickeIndex moved = act_fricke_index(kappa, base);
      BigComplex v = eval_fricke(moved, static_cast<int>(k), th, ctx, FrickeRoute::Weierstrass);
      bool ok = agree_to_bits(v, base_val, rel_bits);
      add("kernel(t=" + std::to_string(kappa.t) + ",s=" + std::to_string(kappa.s) + ")", ok);
    }
    auto orbit = galois_orbit_fricke(base, static_cast<int>(k), d, ctx);
    add("kernel-coset-count", orbit.conjugates.size() <= orbit.coset_count,
        {{"cosets", orbit.coset_count}, {"distinct", orbit.conjugates.size()}});
  }
  if (suite == "main2" || suite == "all") {
    for (GroupKind kind : {GroupKind::Gamma0, GroupKind::Gamma0Dagger}) {
      bool supported = false;
      for (const auto& s : registry())
        if (s.kind == kind && s.level == level) supported = true;
      if (!supported) continue;
      auto rep = verify_main2(kind, level, Discriminant{disc}, ctx);
      add(std::string(kind == GroupKind::Gamma0 ? "main2-gamma0" : "main2-dagger"), rep.passed,
          {{"hypothesis_ok", rep.hypothesis_ok},
           {"conjugates", rep.conjugate_count},
           {"expected", rep.expected_degree}});
    }
  }
  if (suite == "ringlemma" || suite == "all") {
    auto rep = verify_ringclasslemma(Discriminant{disc}, level, ctx);
    add("ringlemma", rep.hypothesis_ok ? rep.passed : true,
        {{"hypothesis_ok", rep.hypothesis_ok}, {"conjugates", rep.conjugate_count}});
  }

  json out;
  out["suite"] = suite;
  out["checks"] = checks;
  out["passed"] = all_ok;
  emit(out, out_path);
  return all_ok ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluation of modular functions at CM points, Galois conjugates via the explicit "
               "reciprocity action, and certified class/ray-class polynomials"};
  app.require_subcommand(1);

  long bits = 128;
  std::string out_path;
  app.add_option("--bits", bits, "working precision in bits (default 128)");
  app.add_option("-o,--output", out_path, "write JSON to a file instead of stdout");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate j, eta, a Fricke function, t_N or s_N");
  std::string fn, tau_str, index_str = "0,1/2", route_str = "series";
  long disc = 0, level = 0, kk = 0;
  eval->add_option("function", fn, "one of: j eta fricke t s")->required();
  eval->add_option("--tau", tau_str, "point as re,im");
  eval->add_option("--disc", disc, "fundamental discriminant selecting theta_K");
  eval->add_option("--level", level, "level N for t/s");
  eval->add_option("--k", kk, "Fricke k in 1..3 (default |O_K^x|/2 for --disc, else 1)");
  eval->add_option("--index", index_str, "Fricke index r1,r2 (default 0,1/2)");
  eval->add_option("--route", route_str, "series | weierstrass (fricke only)");

  // hilbert / ringpoly
  auto* hilbert = app.add_subcommand(
      "hilbert", "Hilbert class polynomial (coeffs ascending, constant term first)");
  hilbert->add_option("--disc", disc, "fundamental discriminant")->required();
  auto* ringpoly = app.add_subcommand(
      "ringpoly", "ring class polynomial for conductor N (coeffs ascending, constant term first)");
  ringpoly->add_option("--disc", disc, "fundamental discriminant")->required();
  ringpoly->add_option("--level", level, "conductor N")->required();

  // raygen
  auto* raygen = app.add_subcommand("raygen", "ray class generator j + p N^2 f^(k) and its minimal polynomial");
  long modulus = 0, prime = 0;
  std::string ray_index;
  raygen->add_option("--disc", disc, "fundamental discriminant, h_K = 1")->required();
  raygen->add_option("--modulus", modulus, "modulus N (ideal N O_K), index defaults to 0,1/N");
  raygen->add_option("--index", ray_index, "explicit index r1,r2 for a general modulus");
  raygen->add_option("--p", prime, "prime > |d_K| (default: smallest such)");

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "Galois conjugates of a Fricke singular value");
  orbit_cmd->add_option("--disc", disc, "fundamental discriminant, h_K = 1")->required();
  orbit_cmd->add_option("--index", index_str, "Fricke index r1,r2")->required();
  orbit_cmd->add_option("--k", kk, "Fricke k (default |O_K^x|/2)");

  // list-hauptmoduln
  auto* list_cmd = app.add_subcommand("list-hauptmoduln", "registry of principal moduli");

  // verify
  auto* verify = app.add_subcommand("verify", "numeric verification suites");
  std::string suite;
  long samples = 20;
  verify->add_option("suite", suite, "transform | relations | kernel | main2 | ringlemma | all")
      ->required();
  verify->add_option("--disc", disc, "discriminant for kernel/main2/ringlemma");
  verify->add_option("--level", level, "level for kernel/main2/ringlemma");
  verify->add_option("--samples", samples, "sample count for randomized suites");

  CLI11_PARSE(app, argc, argv);

  try {
    PrecisionContext ctx = make_ctx(bits);
    long p = ctx.tail_bits() + 32;

    if (*eval) {
      BigComplex pt = BigComplex::i(p);
      if (!tau_str.empty())
        pt = parse_tau(tau_str, p);
      else if (disc != 0)
        pt = theta_point(Discriminant{disc}, ctx).value;
      else
        throw Error("need --tau or --disc");
      if (kk == 0) kk = (disc != 0) ? unit_count(Discriminant{disc}) / 2 : 1;

      BigComplex v;
      if (fn == "j") {
        v = stable_value([&](const PrecisionContext& c) {
          return eval_j(Tau(disc != 0 ? theta_point(Discriminant{disc}, c).value
                                      : parse_tau(tau_str, c.tail_bits() + 32)), c);
        }, ctx);
      } else if (fn == "eta") {
        v = eval_eta(Tau(pt), ctx);
      } else if (fn == "fricke") {
        FrickeIndex x = parse_index(index_str);
        FrickeRoute route =
            route_str == "weierstrass" ? FrickeRoute::Weierstrass : FrickeRoute::Series;
        if (disc == -3 || disc == -4) route = FrickeRoute::Weierstrass;
        v = eval_fricke(x, static_cast<int>(kk), Tau(pt), ctx, route);
      } else if (fn == "t") {
        v = eval_t(level, Tau(pt), ctx);
      } else if (fn == "s") {
        v = eval_s(level, Tau(pt), ctx);
      } else {
        throw Error("unknown function: " + fn);
      }
      emit(value_json(v, ctx), out_path);
      return 0;
    }

    if (*hilbert) {
      auto poly = hilbert_class_poly(Discriminant{disc}, ctx);
      emit(poly_json(poly, disc, std::nullopt, ctx), out_path);
      return 0;
    }
    if (*ringpoly) {
      auto poly = ring_class_poly(Discriminant{disc}, level, ctx);
      emit(poly_json(poly, disc, level, ctx), out_path);
      return 0;
    }
    if (*raygen) {
      std::optional<FrickeIndex> idx;
      if (!ray_index.empty()) idx = parse_index(ray_index);
      if (modulus == 0 && !idx) throw Error("need --modulus or --index");
      long N = modulus != 0 ? modulus : static_cast<long>(idx->denominator());
      auto spec = make_generator_spec(Discriminant{disc}, N, idx,
                                      prime != 0 ? std::optional<long>(prime) : std::nullopt);
      BigComplex gen = main3_generator(spec, ctx);
      auto poly = main3_minpoly(spec, ctx);
      json out = value_json(gen, ctx);
      out["p"] = spec.p;
      out["k"] = spec.k;
      out["index"] = spec.index.r1().get_str() + "," + spec.index.r2().get_str();
      out["minpoly"] = poly_json(poly, disc, N, ctx);
      emit(out, out_path);
      return 0;
    }
    if (*orbit_cmd) {
      Discriminant d{disc};
      if (kk == 0) kk = unit_count(d) / 2;
      auto orb = galois_orbit_fricke(parse_index(index_str), static_cast<int>(kk), d, ctx);
      json out;
      out["base"] = orb.base;
      out["cosets"] = orb.coset_count;
      out["dedup_bits"] = orb.dedup_bits;
      json vals = json::array();
      for (const auto& [alpha, v] : orb.conjugates) {
        json e = value_json(v, ctx);
        e["t"] = alpha.t;
        e["s"] = alpha.s;
        vals.push_back(e);
      }
      out["conjugates"] = vals;
      emit(out, out_path);
      return 0;
    }
    if (*list_cmd) {
      json out = json::array();
      for (const auto& s : registry()) {
        json e;
        e["group"] = s.kind == GroupKind::Gamma0 ? "Gamma0" : "Gamma0Dagger";
        e["level"] = s.level;
        e["eta_exponent"] = s.eta_exponent;
        if (s.fricke_constant) e["fricke_constant"] = s.fricke_constant;
        out.push_back(e);
      }
      json wrap;
      wrap["hauptmoduln"] = out;
      wrap["genus_zero_gamma0"] = genus_zero_levels_gamma0();
      wrap["genus_zero_gamma0_dagger"] = genus_zero_levels_gamma0_dagger();
      emit(wrap, out_path);
      return 0;
    }
    if (*verify) return run_verify(suite, disc, level, samples, bits, out_path);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const RecognitionFailed& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const ClassNumberNotOne& e) {
    std::cerr << "class number not 1: " << e.what() << "\n";
    return 4;
  } catch (const VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
