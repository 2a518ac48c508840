#include "nielsen/properties.hpp"

#include "nielsen/error.hpp"

namespace nielsen {

Endomorphism random_endo(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  // Uniform over nonempty reduced words of length <= max_len: weight each
  // length by the number of words it has.
  std::vector<double> weights;
  double count = static_cast<double>(2 * rank);
  for (std::size_t l = 1; l <= max_len; ++l, count *= static_cast<double>(2 * rank - 1)) weights.push_back(count);
  std::discrete_distribution<std::size_t> len_d(weights.begin(), weights.end());
  std::uniform_int_distribution<int> letter_d(0, static_cast<int>(2 * rank) - 1);
  std::vector<Word> imgs;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::size_t len = len_d(rng) + 1;
    Word w;
    while (w.size() < len) {
      const int r = letter_d(rng);
      const Letter l = gen_letter(r / 2, r % 2 == 1);
      if (!w.empty() && w.back() == -l) continue;
      w.push_back(l);
    }
    imgs.push_back(w);
  }
  return Endomorphism(Basis::standard(rank), imgs);
}

Endomorphism random_injective_endo(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  for (;;) {
    Endomorphism phi = random_endo(rng, rank, max_len);
    if (is_injective(phi)) return phi;
  }
}

PropertyReport run_property_suite(std::size_t count, std::uint64_t seed, std::size_t max_len, const AnalysisOptions& opt) {
  PropertyReport rep;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    Endomorphism phi = random_injective_endo(rng, 2, max_len);
    ++rep.instances;
    Analysis an;
    try {
      an = analyze(rose_map(phi), opt);
    } catch (const UnclassifiableError& e) {
      ++rep.skipped;
      ++rep.skip_reasons[e.reason().substr(0, e.reason().find(" at "))];
      continue;
    } catch (const StructureError& e) {
      // Cross-check disagreements are violations, not skips.
      ++rep.violations;
      rep.details.push_back(format_endo(phi) + ": " + e.what());
      continue;
    }
    ++rep.analysed;
    auto fail = [&](const std::string& what) {
      ++rep.violations;
      rep.details.push_back(format_endo(phi) + ": " + what);
    };
    std::int64_t sum = 0;
    for (const auto& c : an.classes) {
      sum += c.ind;
      auto ic = c.ichr();
      if (!ic) continue;
      ++rep.verified_classes;
      if (c.ind > *ic) fail("ind " + std::to_string(c.ind) + " > ichr " + std::to_string(*ic));
      if (c.ind != 0) {
        ++rep.essential_verified;
        if (c.ind != *ic) fail("essential class with ind " + std::to_string(c.ind) + " != ichr " + std::to_string(*ic));
      }
    }
    if (sum != 1 - trace(abelianization(phi))) fail("index sum differs from 1 - tr");
    if (auto twice = doubled_sum_bound(an); twice && *twice > 2) fail("sum bound exceeded: " + std::to_string(*twice) + "/2 > 1");
  }
  return rep;
}

TraceReport run_trace_suite(std::size_t count_each, std::uint64_t seed, std::size_t max_len, const AnalysisOptions& opt) {
  TraceReport rep;
  std::mt19937_64 rng(seed);
  const std::size_t max_draws = 200 * count_each;
  for (std::size_t draws = 0; draws < max_draws && (rep.low.instances < count_each || rep.high.instances < count_each); ++draws) {
    Endomorphism phi = random_injective_endo(rng, 2, max_len);
    const std::int64_t tr = trace(abelianization(phi));
    if (tr == 1) continue;
    TraceBucket& b = tr < 1 ? rep.low : rep.high;
    if (b.instances >= count_each) continue;
    ++b.instances;
    Analysis an;
    try {
      an = analyze(rose_map(phi), opt);
    } catch (const UnclassifiableError&) {
      ++b.skipped;
      continue;
    } catch (const StructureError& e) {
      ++b.errors;
      b.misses.push_back(format_endo(phi) + ": " + e.what());
      continue;
    }
    if (!an.all_verified) {
      ++b.unverified;
      continue;
    }
    ++b.verified;
    bool hit = false;
    for (const auto& c : an.classes) {
      if (tr < 1 && *c.rk == 0 && *c.a == 0) hit = true;
      if (tr > 1 && *c.rk + *c.a > 1) hit = true;
    }
    if (hit)
      ++b.found;
    else
      b.misses.push_back(format_endo(phi));
  }
  return rep;
}

}  // namespace nielsen
