#include "fqlab/survey.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <numeric>
#include <tuple>

#include "fqlab/error.hpp"
#include "fqlab/kernels.hpp"
#include "fqlab/rng.hpp"
#include "fqlab/set_algebra.hpp"
#include "fqlab/subfields.hpp"

namespace fqlab {

namespace {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// C(n, k) capped just above the budget.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > kEnumerationBudget) return kEnumerationBudget + 1;
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

const char* sampler_name(Sampler s) noexcept {
  switch (s) {
    case Sampler::Uniform: return "uniform";
    case Sampler::ArithmeticProgression: return "ap";
    case Sampler::GeometricProgression: return "gp";
    case Sampler::SubfieldCosetUnion: return "coset";
  }
  return "?";
}

Sampler parse_sampler(std::string_view name) {
  std::string key(name);
  for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "uniform") return Sampler::Uniform;
  if (key == "ap" || key == "arithmetic-progression") return Sampler::ArithmeticProgression;
  if (key == "gp" || key == "geometric-progression") return Sampler::GeometricProgression;
  if (key == "coset" || key == "subfield-coset-union") return Sampler::SubfieldCosetUnion;
  throw Error(Errc::InvalidArgument, "unknown sampler '" + std::string(name) + "'");
}

FqSet sample_set(const FieldPtr& field, Sampler sampler, std::size_t size, std::uint64_t seed) {
  const Field& f = *field;
  Rng rng(seed);
  auto infeasible = [&](std::size_t limit) {
    if (size > limit) {
      throw Error(Errc::SizeInfeasible, std::to_string(size) + " > " + std::to_string(limit) + " for " +
                                            sampler_name(sampler) + " in " + f.descriptor());
    }
  };
  std::vector<Element> v;
  switch (sampler) {
    case Sampler::Uniform: {
      infeasible(f.q());
      for (auto i : rng.sample(f.q(), size)) v.push_back(static_cast<Element>(i));
      break;
    }
    case Sampler::ArithmeticProgression: {
      infeasible(f.p());
      const auto a = static_cast<Element>(rng.below(f.q()));
      const auto d = static_cast<Element>(1 + rng.below(f.p() - 1));  // prime-field step
      Element e = a;
      for (std::size_t i = 0; i < size; ++i) {
        v.push_back(e);
        e = f.add(e, d);
      }
      break;
    }
    case Sampler::GeometricProgression: {
      infeasible(f.group_order());
      const auto c = static_cast<Element>(1 + rng.below(f.group_order()));
      // random primitive root: generator^e with gcd(e, q - 1) = 1
      std::uint64_t e;
      do {
        e = 1 + rng.below(f.group_order());
      } while (gcd(e, f.group_order()) != 1);
      const Element g = f.pow(f.generator(), static_cast<std::int64_t>(e));
      Element cur = c;
      for (std::size_t i = 0; i < size; ++i) {
        v.push_back(cur);
        cur = f.mul(cur, g);
      }
      break;
    }
    case Sampler::SubfieldCosetUnion: {
      const auto lattice = enumerate_subfields(field);
      std::vector<const Subfield*> proper;
      for (const auto& g : lattice)
        if (g.proper) proper.push_back(&g);
      if (proper.empty()) throw Error(Errc::NoProperSubfield, f.descriptor());
      infeasible(f.q());
      const Subfield& g = *proper[rng.below(proper.size())];
      auto reps = coset_representatives(g);
      rng.shuffle(reps);
      Bitmask chosen(f.q());
      std::size_t have = 0;
      for (auto c : reps) {
        if (have == size) break;
        std::vector<Element> fresh;
        for (auto x : g.elements) {
          const Element y = f.mul(c, x);
          if (!chosen.test(y)) fresh.push_back(y);
        }
        if (have + fresh.size() > size) {
          // partial last dilate
          for (auto i : rng.sample(fresh.size(), size - have)) chosen.set(fresh[i]);
          have = size;
          break;
        }
        for (auto y : fresh) chosen.set(y);
        have += fresh.size();
      }
      return FqSet(field, std::move(chosen));
    }
  }
  return FqSet(field, std::move(v));
}

SurveyRecord expander_record(const FqSet& a, Element alpha) {
  if (a.size() < 2) throw Error(Errc::SetTooSmall, "expander records need |A| >= 2");
  const Field& f = a.field();
  SurveyRecord r;
  r.field = f.descriptor();
  r.p = f.p();
  r.m = f.m();
  r.size = a.size();
  r.alpha = alpha;
  r.shifted_product = shifted_product(a, alpha).size();
  const double n = static_cast<double>(a.size());
  const double q = static_cast<double>(f.q());
  r.theorem_curve = std::min(std::pow(n, 1.0 + 1.0 / 52), std::pow(q, 1.0 / 48) * std::pow(n, 1.0 - 1.0 / 48));
  r.gs_curve = std::min(std::sqrt(q) * std::sqrt(n), n * n / std::sqrt(q));
  r.ratio = static_cast<double>(r.shifted_product) / r.theorem_curve;
  r.structural_pass = coset_profile(a, 25, 26, a, 1).pass;
  return r;
}

CorollaryRecord corollary_record(const FqSet& a, Element alpha) {
  if (alpha == 0) throw Error(Errc::ZeroShift, "alpha must be nonzero");
  if (a.empty()) throw Error(Errc::EmptySet, "A is empty");
  const Field& f = a.field();
  CorollaryRecord r;
  r.alpha = alpha;
  const FqSet s = a.intersect(a.translate(f.neg(alpha)));
  r.intersection = s.size();
  const FqSet aa = set_op(a, a, SetOpKind::Prod);
  r.product_set = aa.size();
  r.additive_energy = additive_energy(a);
  for (const auto& [shift, c] : difference_profile(a)) r.max_intersection = std::max(r.max_intersection, c);
  r.shifted_intersection = s.empty() ? 0 : shifted_product(s, alpha).size();
  const double pp = static_cast<double>(r.product_set);
  const double q = static_cast<double>(f.q());
  r.rhs = std::pow(pp, 1.0 - 1.0 / 53) + std::pow(q, -1.0 / 47) * std::pow(pp, 1.0 + 1.0 / 47);
  r.ratio = static_cast<double>(r.intersection) / r.rhs;
  const std::uint64_t n = a.size();
  r.energy_chain = static_cast<unsigned __int128>(r.additive_energy) <=
                   static_cast<unsigned __int128>(n) * n * r.max_intersection;
  r.shift_chain = r.shifted_intersection <= r.product_set;
  r.structural_pass = coset_profile(a, 50, 53, aa, 1).pass;
  return r;
}

MinExpanderResult exhaustive_min_expander(const FieldPtr& field, unsigned k, Element alpha, bool nonzero) {
  const Field& f = *field;
  if (!f.contains(alpha)) throw Error(Errc::ElementOutOfRange, std::to_string(alpha));
  std::vector<Element> universe;
  for (Element e = nonzero ? 1 : 0; e < f.q(); ++e) universe.push_back(e);
  if (k == 0 || k > universe.size()) throw Error(Errc::SizeInfeasible, "k must be in [1, |universe|]");
  const std::uint64_t subsets = binomial_capped(universe.size(), k);
  if (subsets > kEnumerationBudget) {
    throw Error(Errc::BudgetExceeded, "C(" + std::to_string(universe.size()) + ", " + std::to_string(k) +
                                          ") exceeds 10^7");
  }
  const auto raw = kernels::parallel::min_shifted_product(f, universe, k, alpha, 100);
  MinExpanderResult out;
  out.min_value = raw.min_value;
  out.minimizer_count = raw.minimizer_count;
  out.subsets_examined = raw.subsets_examined;
  for (const auto& m : raw.minimizers) out.minimizers.emplace_back(field, m);
  return out;
}

SurveyResult collect_survey(const SurveyConfig& config) {
  if (config.trials == 0) throw Error(Errc::InvalidArgument, "trials must be at least 1");
  struct Task {
    FieldPtr field;
    std::size_t size;
    Sampler sampler;
    std::uint64_t seed;
    std::uint64_t cell;
    std::vector<Element> alphas;
  };
  SurveyResult result;
  std::vector<Task> tasks;
  std::uint64_t cell = 0;
  for (const auto& name : config.fields) {
    const FieldPtr field = parse_field(name);
    for (auto size : config.sizes) {
      if (size < 2) throw Error(Errc::InvalidArgument, "survey sizes must be at least 2");
      for (auto sampler : config.samplers) {
        ++cell;
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
          const std::uint64_t seed = splitmix64(config.seed ^ splitmix64(cell * 0x10001 + trial));
          Task t{field, size, sampler, seed, cell, {}};
          switch (config.alpha_policy) {
            case AlphaPolicy::Fixed: t.alphas = {config.alpha}; break;
            case AlphaPolicy::Sweep:
              for (Element a = 1; a < field->q(); ++a) t.alphas.push_back(a);
              break;
            case AlphaPolicy::Random: {
              Rng rng(splitmix64(seed));
              t.alphas = {static_cast<Element>(1 + rng.below(field->group_order()))};
              break;
            }
          }
          tasks.push_back(std::move(t));
        }
      }
    }
  }

  std::vector<std::vector<SurveyRecord>> out(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    try {
      const FqSet a = sample_set(t.field, t.sampler, t.size, t.seed);
      for (auto alpha : t.alphas) {
        SurveyRecord r = expander_record(a, alpha);
        r.sampler = sampler_name(t.sampler);
        r.seed = t.seed;
        out[i].push_back(std::move(r));
      }
    } catch (const Error& e) {
      if (e.code() == Errc::SizeInfeasible || e.code() == Errc::NoProperSubfield) {
        errors[i] = e.what();
      } else {
        failures[i] = std::current_exception();
      }
    }
  }
  std::uint64_t last_skipped_cell = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    if (!errors[i].empty()) {
      if (tasks[i].cell != last_skipped_cell) {  // one line per cell
        result.skipped.push_back(tasks[i].field->descriptor() + " size " + std::to_string(tasks[i].size) + " " +
                                 sampler_name(tasks[i].sampler) + ": " + errors[i]);
      }
      last_skipped_cell = tasks[i].cell;
      continue;
    }
    for (auto& r : out[i]) result.records.push_back(std::move(r));
  }
  return result;
}

std::string survey_csv(const std::vector<SurveyRecord>& records) {
  std::string s = "# fq-expander-lab v1\n";
  s += "field,p,m,size,alpha,sampler,seed,shifted_product,theorem_curve,gs_curve,ratio,structural_pass\n";
  for (const auto& r : records) {
    s += r.field + "," + std::to_string(r.p) + "," + std::to_string(r.m) + "," + std::to_string(r.size) + "," +
         std::to_string(r.alpha) + "," + r.sampler + "," + std::to_string(r.seed) + "," +
         std::to_string(r.shifted_product) + "," + fmt(r.theorem_curve) + "," + fmt(r.gs_curve) + "," +
         fmt(r.ratio) + "," + (r.structural_pass ? "1" : "0") + "\n";
  }
  return s;
}

nlohmann::json survey_summary(const SurveyResult& result) {
  using Key = std::tuple<std::string, std::size_t, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<const SurveyRecord*>> cells;
  for (const auto& r : result.records) {
    Key k{r.field, r.size, r.sampler};
    auto [it, inserted] = cells.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.push_back(&r);
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& k : order) {
    const auto& rs = cells[k];
    std::vector<double> ratios;
    std::size_t passes = 0;
    for (auto* r : rs) {
      ratios.push_back(r->ratio);
      passes += r->structural_pass;
    }
    std::sort(ratios.begin(), ratios.end());
    const std::size_t n = ratios.size();
    const double median = n % 2 ? ratios[n / 2] : (ratios[n / 2 - 1] + ratios[n / 2]) / 2;
    arr.push_back({{"field", std::get<0>(k)},
                   {"size", std::get<1>(k)},
                   {"sampler", std::get<2>(k)},
                   {"records", n},
                   {"min_ratio", fmt(ratios.front())},
                   {"median_ratio", fmt(median)},
                   {"structural_pass_fraction", fmt(static_cast<double>(passes) / static_cast<double>(n))}});
  }
  return {{"schema", "fq-expander-lab v1"}, {"cells", arr}, {"skipped", result.skipped}};
}

std::string run_survey(const SurveyConfig& config) {
  if (config.output.empty()) throw Error(Errc::IoFailure, "no output path");
  const SurveyResult result = collect_survey(config);
  {
    std::ofstream csv(config.output, std::ios::binary);
    if (!csv) throw Error(Errc::IoFailure, "cannot open " + config.output);
    csv << survey_csv(result.records);
    if (!csv) throw Error(Errc::IoFailure, "write failed for " + config.output);
  }
  const std::string json_path = config.output + ".json";
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw Error(Errc::IoFailure, "cannot open " + json_path);
  js << survey_summary(result).dump(2) << "\n";
  if (!js) throw Error(Errc::IoFailure, "write failed for " + json_path);
  return config.output;
}

}  // namespace fqlab
