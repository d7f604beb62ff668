#include <doctest.h>

#include <random>
#include <sstream>

#include "monocube/cube_set.hpp"
#include "monocube/digraph.hpp"
#include "monocube/errors.hpp"
#include "monocube/fkg.hpp"
#include "monocube/heat_flow.hpp"

using namespace monocube;

TEST_CASE("mset round trip is bit exact") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 100; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 8);
    CubeSet s(n);
    for (Vertex v = 0; v < s.cube_size(); ++v)
      if (rng() % 3 == 0) s.insert(v);
    std::stringstream ss;
    write_mset(ss, s);
    const CubeSet back = read_mset(ss);
    CHECK(back == s);
  }
}

TEST_CASE("mset fixture layout") {
  // {01, 10, 11} at n=2 -> indices {2, 1, 3} -> nibble 1110 = 'e'
  CubeSet s(2);
  s.insert(1);
  s.insert(2);
  s.insert(3);
  std::stringstream ss;
  write_mset(ss, s);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "n=2");
  std::getline(ss, line);
  CHECK(line == "hex=e");
  std::getline(ss, line);
  CHECK(line == "minimal=10 01");
}

TEST_CASE("mset rejects malformed input") {
  std::stringstream bad1("x=2\nhex=e\n");
  CHECK_THROWS_AS(read_mset(bad1), MonocubeError);
  std::stringstream bad2("n=2\nhex=zz\n");
  CHECK_THROWS_AS(read_mset(bad2), MonocubeError);
  std::stringstream bad3("n=2\nhex=ee\n");
  CHECK_THROWS_AS(read_mset(bad3), MonocubeError);
}

TEST_CASE("digraph edge list round trip") {
  WeightedDigraph g(5);
  g.add_edge(0, 1, 1.5);
  g.add_edge(1, 2, 0.25);
  g.add_edge(4, 0, 3.0);
  std::stringstream ss;
  write_digraph(ss, g);
  auto back = read_digraph(ss);
  CHECK(back.vertex_count() == 5);
  CHECK(back.arc_count() == 3);
  CHECK(back.max_weighted_degree() == doctest::Approx(4.5));
}

TEST_CASE("trace csv header and values") {
  FlowTrace tr;
  tr.t = {0.0, 0.5};
  tr.energy = {1.0, 0.25};
  tr.lap_norm_sq = {2.0, 0.5};
  std::stringstream ss;
  write_trace_csv(ss, tr);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "t,energy,laplacian_norm_sq");
  std::getline(ss, line);
  CHECK(line == "0,1,2");
  std::getline(ss, line);
  CHECK(line == "0.5,0.25,0.5");
}

TEST_CASE("seeded flows reproduce byte-identical traces") {
  const auto h4 = WeightedDigraph::directed_hypercube(4);
  auto run = [&]() {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    std::vector<double> f(16);
    for (auto& x : f) x = gauss(rng);
    auto res = heat_flow_solve(h4, f);
    std::stringstream ss;
    write_trace_csv(ss, res.trace);
    return ss.str();
  };
  CHECK(run() == run());
}

TEST_CASE("joint csv reader") {
  std::stringstream ss("x,y,p\n0,0,0.25\n0,1,0.25\n1,0,0.25\n1,1,0.25\n");
  auto j = read_joint_csv(ss);
  CHECK(j.support().size() == 4);
  CHECK(best_c(j) == doctest::Approx(1.0));

  std::stringstream bad("x,y,p\n0,0,0.2\n");
  CHECK_THROWS_AS(read_joint_csv(bad), MonocubeError);
}
