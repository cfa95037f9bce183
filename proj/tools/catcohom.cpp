// Command-line front end: validate, cohomology, check, map.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catcohom/catcohom.hpp"

using namespace catcohom;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct Common {
  std::vector<std::string> load;
  bool json = false;
};

void preload(Workspace& ws, const Common& c) {
  for (const auto& f : c.load) ws.load_file(f);
}

/// A file argument is loaded; anything else is a category expression.
CatPtr resolve_category(Workspace& ws, const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    auto loaded = ws.load_file(arg);
    if (loaded.categories.empty()) throw Error(ErrorKind::InvalidArgument, arg + " defines no category");
    return ws.category(loaded.categories.front());
  }
  return ws.category(arg);
}

const Diagram& resolve_diagram(Workspace& ws, const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    auto loaded = ws.load_file(arg);
    if (loaded.diagrams.empty()) throw Error(ErrorKind::InvalidArgument, arg + " defines no diagram");
    return ws.diagram(loaded.diagrams.front());
  }
  return ws.diagram(arg);
}

const FunctorMap& resolve_functor(Workspace& ws, const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    auto loaded = ws.load_file(arg);
    if (loaded.functors.empty()) throw Error(ErrorKind::InvalidArgument, arg + " defines no functor");
    return ws.functor(loaded.functors.front());
  }
  return ws.functor(arg);
}

std::optional<Flavor> parse_flavor(const std::string& s) {
  for (Flavor f : {Flavor::Lim, Flavor::Bw, Flavor::Hm, Flavor::Thomason, Flavor::Homology, Flavor::Nerve})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

struct CoeffArgs {
  std::string coeff;
  std::optional<std::size_t> constant;
  bool via_delta = false;
};

/// Simplex coefficients for the Thomason flavor on category X up to dimension M.
TruncatedSimplexDiagram simplex_coefficients(Workspace& ws, const CatPtr& X, const std::string& Xname,
                                             const CoeffArgs& c, std::size_t M) {
  if (c.constant) return constant_simplex_diagram(X, M, *c.constant);
  if (c.coeff.empty() || !c.via_delta)
    throw Error(ErrorKind::InvalidArgument, "thomason needs --constant r, or --coeff on fact(C) with --via-delta");
  const Diagram& G = resolve_diagram(ws, c.coeff);
  return induced_simplex_coefficients(X, ws.factorization_of(Xname), G, M);
}

const Diagram& plain_coefficients(Workspace& ws, const CatPtr& X, const CoeffArgs& c, std::optional<Diagram>& holder) {
  if (c.constant) {
    holder = constant_diagram(X, *c.constant);
    return *holder;
  }
  if (c.coeff.empty()) throw Error(ErrorKind::InvalidArgument, "--coeff or --constant is required");
  return resolve_diagram(ws, c.coeff);
}

int run_cohomology(const Common& common, const std::string& flavor_s, const std::string& cat_arg, const CoeffArgs& c,
                   std::size_t N, bool reduced) {
  Workspace ws;
  preload(ws, common);
  const auto flavor = parse_flavor(flavor_s);
  if (!flavor) throw Error(ErrorKind::InvalidArgument, "unknown flavor '" + flavor_s + "'");
  const CatPtr C = resolve_category(ws, cat_arg);
  std::optional<Diagram> holder;
  std::optional<PathComplex> P;
  switch (*flavor) {
    case Flavor::Lim: {
      const Diagram& G = plain_coefficients(ws, C, c, holder);
      P = reduced ? reduced_cochain_complex(C, G, N) : lim_cochain_complex(C, G, N);
      break;
    }
    case Flavor::Bw: {
      if (c.coeff.empty()) throw Error(ErrorKind::InvalidArgument, "bw needs --coeff on fact(C)");
      P = bw_cochain_complex(C, ws.factorization_of(C->name()), resolve_diagram(ws, c.coeff), N);
      break;
    }
    case Flavor::Hm: {
      if (c.coeff.empty()) throw Error(ErrorKind::InvalidArgument, "hm needs --coeff on prod(op(C),C)");
      P = hm_cochain_complex(C, resolve_diagram(ws, c.coeff), N);
      break;
    }
    case Flavor::Thomason:
      P = thomason_cochain_complex(simplex_coefficients(ws, C, C->name(), c, N + 1), N);
      break;
    case Flavor::Homology:
      P = homology_chain_complex(C, plain_coefficients(ws, C, c, holder), N);
      break;
    case Flavor::Nerve:
      P = nerve_chain_complex(C, N);
      break;
  }
  const bool chain = *flavor == Flavor::Homology || *flavor == Flavor::Nerve;
  const auto groups = groups_up_to(*P, N);
  if (common.json) {
    Json out = Json::array();
    for (std::size_t n = 0; n < groups.size(); ++n) out.push_back(group_json(groups[n], static_cast<int>(n)));
    std::cout << out.dump() << "\n";
  } else {
    for (std::size_t n = 0; n < groups.size(); ++n)
      std::cout << (chain ? "H_" : "H^") << n << ": " << groups[n] << "\n";
  }
  return kExitOk;
}

int run_check(const Common& common, const std::string& criterion, const std::string& functor_arg, std::size_t N,
              std::optional<std::size_t> M, bool fail_exit) {
  Workspace ws;
  preload(ws, common);
  const FunctorMap& f = resolve_functor(ws, functor_arg);
  CriterionReport r;
  if (criterion == "verdier") r = verdier_check(f, N);
  else if (criterion == "oberst") r = oberst_colim_check(f, N);
  else if (criterion == "bw") r = bw_preservation_check(f, N);
  else if (criterion == "hm") r = hm_preservation_check(f, N);
  else if (criterion == "thomason") r = thomason_preservation_check(f, N, M.value_or(default_simplex_bound(f)));
  else throw Error(ErrorKind::InvalidArgument, "unknown criterion '" + criterion + "'");
  std::cout << report_json(r).dump(2) << "\n";
  return fail_exit && !r.pass() ? kExitFail : kExitOk;
}

int run_map(const Common& common, const std::string& flavor_s, const std::string& functor_arg, const CoeffArgs& c,
            std::size_t n) {
  Workspace ws;
  preload(ws, common);
  const auto flavor = parse_flavor(flavor_s);
  if (!flavor) throw Error(ErrorKind::InvalidArgument, "unknown flavor '" + flavor_s + "'");
  const FunctorMap& f = resolve_functor(ws, functor_arg);
  std::optional<Diagram> holder;
  GroupHom h;
  switch (*flavor) {
    case Flavor::Lim:
      h = restriction_map(f, plain_coefficients(ws, f.target, c, holder), Flavor::Lim, n);
      break;
    case Flavor::Bw:
    case Flavor::Hm:
      if (c.coeff.empty()) throw Error(ErrorKind::InvalidArgument, "--coeff is required");
      h = restriction_map(f, resolve_diagram(ws, c.coeff), *flavor, n);
      break;
    case Flavor::Thomason:
      h = restriction_map(f, simplex_coefficients(ws, f.target, f.target->name(), c, n + 1), n);
      break;
    case Flavor::Homology:
      h = homology_pushforward(f, plain_coefficients(ws, f.target, c, holder), n);
      break;
    case Flavor::Nerve:
      h = nerve_pushforward(f, n);
      break;
  }
  if (common.json) {
    Json j = Json::object();
    j["flavor"] = to_string(*flavor);
    j["degree"] = n;
    const Json hom = group_hom_json(h);
    for (const auto& [k, v] : hom.items()) j[k] = v;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "source: " << h.source << "\n"
              << "target: " << h.target << "\n"
              << "matrix: " << h.matrix.to_string() << "\n"
              << "iso: " << (h.is_iso ? "yes" : "no") << "\n"
              << "mono: " << (h.is_mono ? "yes" : "no") << "\n"
              << "epi: " << (h.is_epi ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int run_validate(const std::vector<std::string>& files) {
  for (const auto& file : files) {
    Workspace ws;
    auto loaded = ws.load_file(file);
    for (const auto& n : loaded.categories) {
      CatPtr C = ws.category(n);
      std::cout << "category " << n << ": " << C->num_objects() << " objects, " << C->num_morphisms()
                << " morphisms, retraction-free " << (is_retraction_free(*C) ? "yes" : "no") << ", components "
                << connected_components(*C).size() << "\n";
    }
    for (const auto& n : loaded.functors) {
      const FunctorMap& F = ws.functor(n);
      std::cout << "functor " << n << ": " << F.source->name() << " -> " << F.target->name() << "\n";
    }
    for (const auto& n : loaded.diagrams) std::cout << "diagram " << n << " on " << ws.diagram(n).base->name() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of finite categories and preservation criteria"};
  app.require_subcommand(1);
  Common common;

  auto* validate_cmd = app.add_subcommand("validate", "Check category, functor and diagram files");
  std::vector<std::string> files;
  validate_cmd->add_option("files", files, "input files")->required()->check(CLI::ExistingFile);

  auto* coh = app.add_subcommand("cohomology", "Compute (co)homology groups");
  std::string flavor = "lim", category, criterion, functor;
  CoeffArgs coeff;
  std::size_t max_degree = 3, level = 1, degree = 1;
  std::optional<std::size_t> simplex_bound;
  bool reduced = false, fail_exit = false;
  coh->add_option("--flavor", flavor, "lim, bw, hm, thomason, homology or nerve")->capture_default_str();
  coh->add_option("--category", category, "category file or expression")->required();
  coh->add_option("--coeff", coeff.coeff, "diagram file or name");
  coh->add_option("--constant", coeff.constant, "constant coefficients of this rank");
  coh->add_flag("--via-delta", coeff.via_delta, "thomason: pull the natural system back along delta");
  coh->add_option("--max-degree", max_degree, "highest degree")->capture_default_str();
  coh->add_flag("--reduced", reduced, "lim: use the complex of non-identity chains");
  coh->add_flag("--json", common.json, "JSON output");
  coh->add_option("--load", common.load, "extra files to load first");

  auto* check = app.add_subcommand("check", "Decide a preservation criterion");
  check->add_option("--criterion", criterion, "verdier, oberst, bw, hm or thomason")->required();
  check->add_option("--functor", functor, "functor file or name")->required();
  check->add_option("--level", level, "level N")->capture_default_str();
  check->add_option("--simplex-bound", simplex_bound, "thomason: longest simplex checked");
  check->add_flag("--fail-exit", fail_exit, "exit with status 1 when the verdict is fail");
  check->add_option("--load", common.load, "extra files to load first");

  auto* map = app.add_subcommand("map", "Induced map on (co)homology along a functor");
  map->add_option("--flavor", flavor, "lim, bw, hm, thomason, homology or nerve")->capture_default_str();
  map->add_option("--functor", functor, "functor file or name")->required();
  map->add_option("--coeff", coeff.coeff, "diagram on the target side");
  map->add_option("--constant", coeff.constant, "constant coefficients of this rank");
  map->add_flag("--via-delta", coeff.via_delta, "thomason: pull the natural system back along delta");
  map->add_option("--degree", degree, "degree")->capture_default_str();
  map->add_flag("--json", common.json, "JSON output");
  map->add_option("--load", common.load, "extra files to load first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*validate_cmd) return run_validate(files);
    if (*coh) return run_cohomology(common, flavor, category, coeff, max_degree, reduced);
    if (*check) return run_check(common, criterion, functor, level, simplex_bound, fail_exit);
    if (*map) return run_map(common, flavor, functor, coeff, degree);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::PathCapExceeded ? kExitCap : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
