#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "generators.hpp"

using namespace catcohom;
using testsupport::Rng;

namespace {

const std::string kData = CATCOHOM_DATA_DIR;

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + std::string(CATCOHOM_CLI) + "\" " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& f) { return "\"" + kData + "/" + f + "\""; }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, CategoryFile) {
  const FinCat V = parse_category(
      "category V\n"
      "objects a b c   # three objects\n"
      "mor alpha : a -> c\n"
      "mor beta : b -> c\n");
  EXPECT_EQ(V.num_morphisms(), 5u);
  EXPECT_EQ(V.name(), "V");
  EXPECT_EQ(nerve_homology_up_to(share(V), 1), (std::vector<AbGroup>{AbGroup::free(1), AbGroup::free(0)}));
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  EXPECT_EQ(kind_of([] { parse_category("category V\nobjects a\nmor f a -> a\n"); }), ErrorKind::Syntax);
  EXPECT_NE(error_message([] { parse_category("category V\nobjects a\nmor f a -> a\n", "v.cat"); }).find("v.cat:3:"),
            std::string::npos);
  EXPECT_NE(error_message([] { parse_category("category V\n  bogus x\n", "v.cat"); }).find("v.cat:2:3"),
            std::string::npos);
  EXPECT_EQ(kind_of([] { parse_category("category E\nobjects 1\nmor e : 1 -> 1\n"); }), ErrorKind::MissingComposite);
  Workspace ws;
  ws.load_text("category E\nobjects 1\nmor e : 1 -> 1\ncomp e e = e\n", "E.cat");
  EXPECT_EQ(kind_of([&] { parse_diagram("diagram X on E\nrank 1 = 1\nmat e = [1 x]\n", ws); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([&] { parse_diagram("diagram X on E\nrank 1 = 1\n", ws); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(kind_of([&] { parse_diagram("diagram X on E\nrank 1 = 1\nmat e = [2]\n", ws); }), ErrorKind::NotFunctorial);
  EXPECT_EQ(kind_of([&] { parse_diagram("diagram X on Nope\n", ws); }), ErrorKind::UnknownName);
}

TEST(Parse, DiagramDefaults) {
  Workspace ws;
  ws.add_search_dir(kData);
  const Diagram A = parse_diagram("diagram A on V\nrank c = 1\n", ws);
  EXPECT_EQ(A.rank, (std::vector<std::size_t>{0, 0, 1}));
  ws.load_text("category P\nobjects x y\nmor alpha : x -> y\n", "P.cat");
  const Diagram I = parse_diagram("diagram I on P\nrank x = 2\nrank y = 2\nmat alpha = [1 0; 0 1]\n", ws);
  EXPECT_EQ(I.action[ws.category("P")->morphism_id("alpha")], IntMatrix::identity(2));
  const Diagram Z = parse_diagram("diagram Z on P\nrank x = 2\nrank y = 1\nmat alpha = []\n", ws);
  EXPECT_EQ(Z.action[2], IntMatrix(1, 2));
}

TEST(Parse, DerivedCategoryExpressions) {
  Workspace ws;
  ws.add_search_dir(kData);
  EXPECT_EQ(ws.category("fact(E)")->num_morphisms(), 8u);
  EXPECT_EQ(ws.category("fact(E)"), ws.category(" fact( E ) "));
  EXPECT_EQ(ws.category("prod(op(D),D)")->num_objects(), 4u);
  EXPECT_EQ(ws.category("op(op(V))")->num_morphisms(), 5u);
  EXPECT_EQ(kind_of([&] { ws.category("fact(E,E)"); }), ErrorKind::Syntax);
  ws.load_file(kData + "/f.fun");
  const FunctorMap& f = ws.functor("f");
  EXPECT_EQ(f.obj(0), 0u);
  EXPECT_EQ(f.target->name(), "D");
}

TEST(Parse, RoundTrip) {
  Rng rng(113);
  for (int t = 0; t < 30; ++t) {
    const auto R = testsupport::random_category(rng, 3, 8, "R");
    const FinCat again = parse_category(print_category(*R.cat));
    EXPECT_EQ(again, *R.cat);

    Workspace ws;
    ws.add_category(R.cat);
    const Diagram G = testsupport::random_coefficients(rng, R);
    Diagram named = G;
    named.name = "G";
    const Diagram G2 = parse_diagram(print_diagram(named), ws);
    EXPECT_EQ(G2.rank, G.rank);
    EXPECT_EQ(G2.action, G.action);

    const auto S = testsupport::random_category(rng, 3, 8, "S");
    ws.add_category(S.cat);
    FunctorMap f = testsupport::random_functor(rng, R.cat, S.cat, "f");
    const FunctorMap f2 = parse_functor(print_functor(f), ws);
    EXPECT_EQ(f2.obj_map, f.obj_map);
    EXPECT_EQ(f2.mor_map, f.mor_map);
  }
  Workspace ws;
  ws.add_search_dir(kData);
  const std::string text = print_category(*ws.category("V"));
  EXPECT_EQ(print_category(parse_category(text)), text);
}

TEST(Cli, PaperExamples) {
  const CliRun bw = run("cohomology --flavor bw --category " + data("E.cat") + " --coeff " + data("A.dgm") +
                     " --max-degree 3");
  EXPECT_EQ(bw.code, 0);
  EXPECT_EQ(bw.out, "H^0: 0\nH^1: Z^2\nH^2: 0\nH^3: 0\n");

  const CliRun lim = run("cohomology --flavor lim --category " + data("V.cat") + " --coeff " + data("V_A.dgm") +
                      " --max-degree 2");
  EXPECT_EQ(lim.code, 0);
  EXPECT_EQ(lim.out, "H^0: 0\nH^1: Z\nH^2: 0\n");

  const CliRun check = run("check --criterion bw --functor " + data("f.fun") + " --level 1");
  EXPECT_EQ(check.code, 0);
  const Json j = Json::parse(check.out);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["witnesses"][0]["anchor"], "id_1");
  EXPECT_EQ(run("check --criterion bw --fail-exit --functor " + data("f.fun") + " --level 1").code, 1);
  EXPECT_EQ(run("check --criterion verdier --fail-exit --functor " + data("f.fun") + " --level 2").code, 0);
}

TEST(Cli, JsonIsDeterministic) {
  const std::string args = "cohomology --json --flavor hm --category " + data("D.cat") + " --coeff " +
                           data("D_bimod.dgm") + " --max-degree 3";
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[1]["degree"], 1);
  EXPECT_EQ(j[1]["betti"], 1);
  EXPECT_TRUE(j[1]["torsion"].empty());

  const std::string chk = "check --criterion thomason --functor " + data("f.fun") + " --level 1 --simplex-bound 2";
  EXPECT_EQ(run(chk).out, run(chk).out);
  EXPECT_EQ(Json::parse(run(chk).out)["simplex_bound"], 2);
}

TEST(Cli, OtherFlavorsAndMaps) {
  const CliRun t = run("cohomology --flavor thomason --via-delta --category " + data("D.cat") + " --coeff " +
                    data("D_nat.dgm") + " --max-degree 2");
  EXPECT_EQ(t.out, "H^0: 0\nH^1: Z\nH^2: 0\n");
  const CliRun c = run("cohomology --flavor thomason --constant 1 --category " + data("V.cat") + " --max-degree 1");
  EXPECT_EQ(c.out, "H^0: Z\nH^1: 0\n");
  const CliRun n = run("cohomology --flavor nerve --category " + data("E.cat") + " --max-degree 2");
  EXPECT_EQ(n.out, "H_0: Z\nH_1: 0\nH_2: 0\n");
  const CliRun h = run("cohomology --flavor homology --constant 1 --category " + data("V.cat") + " --max-degree 1");
  EXPECT_EQ(h.out, "H_0: Z\nH_1: 0\n");
  const CliRun r = run("cohomology --flavor lim --reduced --category " + data("V.cat") + " --coeff " + data("V_A.dgm") +
                    " --max-degree 1");
  EXPECT_EQ(r.out, "H^0: 0\nH^1: Z\n");

  const CliRun m = run("map --flavor bw --functor " + data("f.fun") + " --coeff " + data("D_nat.dgm") + " --degree 1");
  EXPECT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("iso: no"), std::string::npos);
  const CliRun mj = run("map --json --flavor lim --constant 1 --functor " + data("f.fun") + " --degree 0");
  EXPECT_EQ(Json::parse(mj.out)["is_iso"], true);

  const CliRun v = run("validate " + data("V.cat") + " " + data("A.dgm"));
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("category V: 3 objects, 5 morphisms"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("cohomology --category nope").code, 2);
  EXPECT_EQ(run("cohomology --flavor bogus --category " + data("V.cat")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check --criterion bw").code, 2);
  const auto bad = std::filesystem::temp_directory_path() / "catcohom_bad.cat";
  std::ofstream(bad) << "category B\nobjects a\nmor f : a -> zz\n";
  const CliRun b = run("validate \"" + bad.string() + "\"");
  EXPECT_EQ(b.code, 2);
  EXPECT_NE(b.out.find("DanglingEndpoint"), std::string::npos);
  std::filesystem::remove(bad);

  const CliRun cap = run("cohomology --flavor lim --constant 1 --category " + data("E.cat") + " --max-degree 4",
                      "CATCOHOM_PATH_CAP=4");
  EXPECT_EQ(cap.code, 3);
  EXPECT_EQ(run("cohomology --flavor lim --constant 1 --category " + data("E.cat") + " --max-degree 4").code, 0);
}
