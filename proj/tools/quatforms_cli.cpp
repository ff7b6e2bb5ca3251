#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "quatforms/cache.hpp"
#include "quatforms/errors.hpp"
#include "quatforms/serialize.hpp"
#include "quatforms/verify.hpp"

using namespace quatforms;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Config {
  std::int64_t p = 7;
  int n = 1;
  int e = 0;
  std::string gamma_style = "unit-column";
  std::string character = "trivial";
  std::string recipe = "diagonal";
  std::string witness = "congruent";
  int weight = 2;
  int precision = 20;
  int truncation = 0;
  std::string op = "T3";
  std::vector<std::string> eigen_ops{"T3", "T5"};
  int iters = 0;
  std::uint64_t seed = 1;
  int count = 1;
  bool lift = false;
  std::vector<int> criteria;
  std::string cache_dir;
  std::string out;
  std::string format = "json";
};

LevelSpec level_of(const Config& c) {
  LevelSpec level{c.p, c.n, c.e, parse_gamma_style(c.gamma_style), parse_character(c.character),
                  parse_recipe(c.recipe)};
  level.validate();
  return level;
}

ConventionProfile profile_of(const Config& c) {
  ConventionProfile profile = kCalibratedProfile;
  if (c.witness == "lexicographic")
    profile.witness = WitnessPolicy::Lexicographic;
  else if (c.witness != "congruent")
    throw ValidationError("unknown witness policy '" + c.witness + "'");
  return profile;
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

Json envelope(const std::string& command, const Config& c, Json params, Json result) {
  Json doc;
  doc["command"] = command;
  doc["version"] = kVersion;
  params["format"] = c.format;
  doc["parameters"] = std::move(params);
  doc["result"] = std::move(result);
  doc["timestamp"] = timestamp();
  return doc;
}

Json level_params(const Config& c) {
  Json j = level_json(level_of(c));
  j["witness"] = c.witness;
  return j;
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    atomic_write(c.out, text);
  }
}

// Subcommands return the exit code.

int cmd_classset(const Config& c) {
  LevelSpec level = level_of(c);
  ClassSet cs(level, PrecCtx{level.p, std::max(c.precision, level.n + 1), 1});
  if (c.format == "table") {
    std::ostringstream os;
    os << "level " << level_key(level) << ": " << cs.size() << " classes\n";
    for (int i = 0; i < cs.size(); ++i)
      os << i << "  column (" << cs.reps()[i].s[0] << ", " << cs.reps()[i].s[1] << ")  y " << cs.reps()[i].y
         << "  stabilizer " << cs.stabilizer_orders()[i] << "\n";
    emit(c, os.str());
    return 0;
  }
  Json params = level_params(c);
  params["precision"] = cs.ctx().N;
  emit(c, envelope("classset", c, params, class_set_json(cs)).dump(2) + "\n");
  return 0;
}

int cmd_hecke(const Config& c) {
  LevelSpec level = level_of(c);
  const ConventionProfile profile = profile_of(c);
  const HeckeDescriptor desc = HeckeDescriptor::parse(c.op, level.p);
  const bool overconvergent = c.truncation > 0 || c.weight < 2;
  const int M = c.truncation > 0 ? c.truncation : 20;
  FormSpace space = overconvergent ? make_space(level, c.weight, Model::Overconvergent, c.precision, M)
                                   : make_space(level, c.weight, Model::Classical, c.precision);
  HeckeOperator op(space, desc, profile);
  ResidueMatrix A = op.matrix();
  PadicPoly f = charpoly(A);
  Json result;
  result["operator"] = desc.name();
  result["model"] = overconvergent ? "overconvergent" : "classical";
  result["dimension"] = space.dimension();
  result["profile"] = to_string(profile);
  std::optional<IntCharpoly> lifted;
  if (c.lift) {
    if (overconvergent) throw ValidationError("--lift needs the classical model");
    lifted = charpoly_int(desc, level, c.weight, coefficient_bound(space.dimension(), eigenvalue_bound(desc, c.weight)),
                          0, profile);
    Json lj = int_poly_json(lifted->poly);
    lj["precision"] = lifted->precision;
    result["charpoly_integer"] = std::move(lj);
  }
  result["charpoly"] = padic_poly_json(f);
  result["matrix"] = matrix_json(A);
  if (c.format == "table") {
    std::ostringstream os;
    os << desc.name() << " on " << result["model"].get<std::string>() << " weight " << c.weight << ", dimension "
       << space.dimension() << "\n";
    if (lifted) os << "charpoly " << int_poly_to_string(lifted->poly) << "\n";
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      for (Eigen::Index j = 0; j < A.cols(); ++j) os << (j ? " " : "") << symmetric_lift(A(i, j));
      os << "\n";
    }
    emit(c, os.str());
    return 0;
  }
  Json params = level_params(c);
  params["weight"] = c.weight;
  params["precision"] = c.precision;
  params["truncation"] = overconvergent ? M : 0;
  params["op"] = desc.name();
  emit(c, envelope("hecke", c, params, result).dump(2) + "\n");
  return 0;
}

int cmd_slopes(const Config& c) {
  LevelSpec level = level_of(c);
  const int M = c.truncation > 0 ? c.truncation : 20;
  SlopeSpectrum s = slope_spectrum(level, c.weight, M, c.precision, profile_of(c));
  if (c.format == "table") {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.slopes.size(); ++i)
      os << rational_json(s.slopes[i]).get<std::string>() << (s.stable[i] ? "" : "  (unstable)") << "\n";
    emit(c, os.str());
    return 0;
  }
  Json params = level_params(c);
  params["weight"] = c.weight;
  params["precision"] = c.precision;
  params["truncation"] = M;
  emit(c, envelope("slopes", c, params, slope_json(s)).dump(2) + "\n");
  return 0;
}

int cmd_eigenform(const Config& c) {
  LevelSpec level = level_of(c);
  const ConventionProfile profile = profile_of(c);
  const int M = c.truncation > 0 ? c.truncation : 20;
  const int K = c.iters > 0 ? c.iters : c.precision;
  FormSpace space = make_space(level, c.weight, Model::Overconvergent, c.precision, M);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < c.count; ++i) seeds.push_back(c.seed + static_cast<std::uint64_t>(i));
  PowerIteration it = power_iterate(space, K, seeds, c.count, profile);
  std::vector<EigenApprox> forms;
  if (c.count > 1) {
    forms = split_by_W(it.vectors, space, K, profile);
  } else {
    EigenApprox e;
    e.form = it.vectors[0];
    e.trusted_digits = K;
    forms.push_back(std::move(e));
  }
  std::vector<HeckeDescriptor> ops;
  for (const auto& s : c.eigen_ops) ops.push_back(HeckeDescriptor::parse(s, level.p));
  ops.push_back(HeckeDescriptor::U(level.p));
  for (EigenApprox& e : forms)
    for (const auto& d : ops) e.eigenvalues.emplace_back(d, extract_eigenvalue(e.form, HeckeOperator(space, d, profile), e.trusted_digits));
  if (c.format == "table") {
    std::ostringstream os;
    for (std::size_t f = 0; f < forms.size(); ++f) {
      os << "form " << f << ":";
      for (const auto& [d, r] : forms[f].eigenvalues)
        os << "  " << d.name() << " = " << symmetric_lift_mod(r.value, r.digits) << " mod " << level.p << "^" << r.digits;
      os << "\n";
    }
    emit(c, os.str());
    return 0;
  }
  Json params = level_params(c);
  params["weight"] = c.weight;
  params["precision"] = c.precision;
  params["truncation"] = M;
  params["iters"] = K;
  params["seeds"] = it.seeds;
  Json result = Json::array();
  for (const auto& e : forms) result.push_back(eigen_json(e));
  emit(c, envelope("eigenform", c, params, result).dump(2) + "\n");
  return 0;
}

int cmd_verify(const Config& c) {
  auto results = run_acceptance(c.criteria);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (c.format == "table") {
    std::ostringstream os;
    for (const auto& r : results) os << format_line(r) << "\n";
    emit(c, os.str());
  } else {
    Json arr = Json::array();
    for (const auto& r : results) {
      Json j;
      j["id"] = r.id;
      j["title"] = r.title;
      j["pass"] = r.pass;
      j["limit_seconds"] = r.limit_seconds;
      j["detail"] = r.detail;
      arr.push_back(std::move(j));
    }
    Json params;
    params["criteria"] = c.criteria;
    emit(c, envelope("verify", c, params, arr).dump(2) + "\n");
  }
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic automorphic forms: class sets, Hecke operators, slopes and eigenforms"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config");
  app.require_subcommand(1);
  Config c;

  auto level_opts = [&](CLI::App* s) {
    s->add_option("--p", c.p, "level prime (odd)")->capture_default_str();
    s->add_option("--n", c.n, "level exponent at p")->capture_default_str();
    s->add_option("--e", c.e, "2-adic exponent of 1+m^e, 0..4")->capture_default_str();
    s->add_option("--gamma-style", c.gamma_style, "unit-column | projective")->capture_default_str();
    s->add_option("--character", c.character, "trivial | quadratic")->capture_default_str();
    s->add_option("--recipe", c.recipe, "diagonal | kernel")->capture_default_str();
    s->add_option("--witness", c.witness, "congruent | lexicographic")->capture_default_str();
    s->add_option("--precision", c.precision, "p-adic precision N")->capture_default_str();
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--cache-dir", c.cache_dir, std::string("cache directory (default $") + kCacheDirEnv + ")");
    s->add_option("--out", c.out, "write output to a file");
    s->add_option("--format", c.format, "json | table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  };

  auto* classset = app.add_subcommand("classset", "orbit representatives of the class set");
  level_opts(classset);
  common(classset);

  auto* hecke = app.add_subcommand("hecke", "Hecke matrix and characteristic polynomial");
  level_opts(hecke);
  common(hecke);
  hecke->add_option("--weight", c.weight, "weight k")->capture_default_str();
  hecke->add_option("--truncation", c.truncation, "series truncation M (overconvergent model)");
  hecke->add_option("--op", c.op, "T<l> | U<p> | W")->capture_default_str();
  hecke->add_flag("--lift", c.lift, "recover the integer characteristic polynomial (classical)");

  auto* slopes = app.add_subcommand("slopes", "Newton slopes of U_p on overconvergent forms");
  level_opts(slopes);
  common(slopes);
  slopes->add_option("--weight", c.weight, "weight k")->capture_default_str();
  slopes->add_option("--truncation", c.truncation, "series truncation M (default 20)");

  auto* eigen = app.add_subcommand("eigenform", "slope-0 eigenforms by power iteration");
  level_opts(eigen);
  common(eigen);
  eigen->add_option("--weight", c.weight, "weight k")->capture_default_str();
  eigen->add_option("--truncation", c.truncation, "series truncation M (default 20)");
  eigen->add_option("--iters", c.iters, "power iterations K (default N)");
  eigen->add_option("--seed", c.seed, "first seed")->capture_default_str();
  eigen->add_option("--count", c.count, "dimension r of the slope-0 space; r > 1 splits by W")->capture_default_str();
  eigen->add_option("--op", c.eigen_ops, "operators to read eigenvalues of (U_p is always added)");

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  common(verify);
  verify->add_option("--criterion", c.criteria, "criterion ids (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    ResultCache::global().set_directory(resolve_cache_dir(c.cache_dir));
    if (*classset) return cmd_classset(c);
    if (*hecke) return cmd_hecke(c);
    if (*slopes) return cmd_slopes(c);
    if (*eigen) return cmd_eigenform(c);
    if (*verify) return cmd_verify(c);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
