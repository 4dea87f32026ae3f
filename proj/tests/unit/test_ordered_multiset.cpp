#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "extinction_lab/ordered_multiset.hpp"

using namespace extinction_lab;

TEST_CASE("basic operations") {
  OrderedMultiset s;
  CHECK(s.empty());
  const auto a = s.insert(0.5);
  const auto b = s.insert(0.2);
  const auto c = s.insert(0.5);
  CHECK(s.size() == 3);
  CHECK(s.min() == b);
  CHECK(a < c);  // equal fitness ordered by insertion
  CHECK(s.count_not_after(a) == 2);
  CHECK(s.count_not_after(c) == 3);
  CHECK(s.count_less(0.5) == 1);
  CHECK(s.count_at_most(0.5) == 3);
  CHECK(s.count_in(0.2, 0.5) == 0);
  CHECK(s.count_in(0.1, 0.6) == 3);
  CHECK(s.pop_min() == b);
  CHECK(s.pop_min() == a);
  CHECK(s.pop_min() == c);
  CHECK(s.empty());
  s.insert(1.0);
  s.clear();
  CHECK(s.size() == 0);
}

TEST_CASE("matches a sorted-vector model under random operations") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OrderedMultiset s;
  std::vector<FitnessKey> model;
  for (int step = 0; step < 20000; ++step) {
    if (model.empty() || u(rng) < 0.55) {
      // Coarse values force plenty of ties.
      const double x = std::floor(u(rng) * 50.0) / 50.0;
      model.push_back(s.insert(x));
      std::sort(model.begin(), model.end());
    } else {
      CHECK(s.pop_min() == model.front());
      model.erase(model.begin());
    }
    if (step % 97 == 0) {
      REQUIRE(s.size() == model.size());
      CHECK(s.keys() == model);
      const double a = u(rng), b = a + u(rng) * 0.3;
      const auto expected = std::count_if(model.begin(), model.end(), [&](const FitnessKey& k) {
        return k.fitness > a && k.fitness < b;
      });
      CHECK(s.count_in(a, b) == static_cast<std::size_t>(expected));
      if (!model.empty()) {
        const auto& probe = model[model.size() / 2];
        CHECK(s.count_not_after(probe) == model.size() / 2 + 1);
      }
    }
  }
}
