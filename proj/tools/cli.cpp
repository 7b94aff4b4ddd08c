#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "fqlab/error.hpp"
#include "fqlab/rng.hpp"
#include "fqlab/serialize.hpp"
#include "fqlab/subfields.hpp"

namespace fqlab::cli {

namespace {

struct UsageError : std::runtime_error {
  UsageError(const std::string& msg, const CLI::App* app) : std::runtime_error(msg), app(app) {}
  const CLI::App* app;
};

struct Globals {
  std::string field;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";
  std::uint32_t kappa = 1;
};

std::uint64_t field_cap() {
  const char* env = std::getenv("FQLAB_CAP");
  if (env == nullptr || *env == '\0') return kDefaultFieldCap;
  std::uint64_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0 || (v & (v - 1)) != 0 || v > (1u << 24)) {
    throw Error(Errc::InvalidArgument, "FQLAB_CAP must be a power of two <= 2^24, got '" + std::string(s) + "'");
  }
  return v;
}

Rational parse_rational(const std::string& s) {
  Rational r;
  const auto slash = s.find('/');
  auto num = [&](std::string_view t, std::int64_t& v) {
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw Error(Errc::ParseError, "bad rational '" + s + "'");
    }
  };
  const std::string_view sv(s);
  num(sv.substr(0, slash), r.num);
  if (slash != std::string::npos) num(sv.substr(slash + 1), r.den);
  if (r.den <= 0) throw Error(Errc::ParseError, "bad rational '" + s + "'");
  return r;
}

std::string join(const FqSet& s) {
  std::string o;
  for (Element e : s) {
    if (!o.empty()) o += ',';
    o += std::to_string(e);
  }
  return o;
}

std::string quoted(const std::string& s) { return s.find(',') == std::string::npos ? s : "\"" + s + "\""; }

// ---------------------------------------------------------------------------
// verify

struct LemmaInputs {
  FqSet x;
  std::optional<FqSet> a;
  std::optional<FqSet> b;
  std::vector<FqSet> bs;
  std::optional<Element> r;
  std::optional<Rational> c;  // defaults to |R(X)| / |X|^2, the largest admissible value
  Rational epsilon{1, 4};
  std::vector<std::uint64_t> weights;
  std::optional<std::uint64_t> k;
  Element xe = 1;
  Element ye = 0;
  Sign sign = Sign::Plus;
  SearchMode mode = SearchMode::Auto;
  std::uint64_t seed = 0;
};

Element default_r(const FqSet& x) {
  if (x.size() < 2) return 1;
  const FqSet rq = quotient_set(x);
  for (Element e = 1; e < x.field().q(); ++e) {
    if (!rq.contains(e)) return e;
  }
  return 1;
}

LemmaReport run_lemma(LemmaId id, const LemmaInputs& in) {
  const FqSet& x = in.x;
  const FqSet a = in.a.value_or(x);
  const FqSet b = in.b.value_or(x);
  std::vector<FqSet> bs = in.bs;
  switch (id) {
    case LemmaId::RBcard: return check_rbcard(x, in.r.value_or(default_r(x)), a, b);
    case LemmaId::RBFq: return check_rbfq(x);
    case LemmaId::QuotientSubfield: return check_quotient_subfield(x);
    case LemmaId::Pivot: {
      const auto n = static_cast<std::int64_t>(x.size());
      const Rational c = in.c ? *in.c : Rational{x.size() < 2 ? 0 : static_cast<std::int64_t>(quotient_set(x).size()), n * n};
      return find_pivot_r(x, c, in.seed);
    }
    case LemmaId::BouGlibPivot: return find_pivot_xi(a, b);
    case LemmaId::RuzsaTriangle:
      if (bs.size() != 2) bs = {a, b};
      return check_sumset_inequalities(x, bs, SumsetKind::RuzsaTriangle);
    case LemmaId::RatioToShift: return check_sumset_inequalities(x, {}, SumsetKind::RatioToShift);
    case LemmaId::Plunnecke:
      if (bs.empty()) bs = {b};
      return check_sumset_inequalities(x, bs, SumsetKind::Plunnecke);
    case LemmaId::PlunneckeRefined:
      if (bs.empty()) bs = {b};
      return refined_plunnecke_subset(x, bs, in.epsilon, in.mode).report;
    case LemmaId::CoveringByShifts: return check_covering_by_shifts(x, in.xe, in.ye, a, b, in.sign);
    case LemmaId::BasicShiftBound: return basic_shift_subset(x, in.mode).report;
    case LemmaId::Popularity: {
      std::vector<std::uint64_t> w = in.weights;
      if (w.empty()) w.assign(x.size(), 1);
      std::uint64_t sum = 0;
      for (auto v : w) sum += v;
      return check_popularity(x, w, in.k.value_or(sum));
    }
    case LemmaId::EnergyIdentities: return check_energy_identities(x, b);
    case LemmaId::EnergyCS: return check_energy_cs(x, b);
    case LemmaId::DyadicEnergy: return check_dyadic_energy(x, b);
    case LemmaId::Rudnev: return check_rudnev(x, b);
  }
  throw Error(Errc::InvalidArgument, "unhandled lemma");
}

bool wants_nonzero(LemmaId id) {
  switch (id) {
    case LemmaId::RBcard:
    case LemmaId::RBFq:
    case LemmaId::QuotientSubfield:
    case LemmaId::RuzsaTriangle:
    case LemmaId::Plunnecke:
    case LemmaId::PlunneckeRefined:
    case LemmaId::Popularity:
      return false;
    default:
      return true;
  }
}

// Random instance for one (lemma, trial) cell. Sizes stay at or below ten so
// that every subset search runs exhaustively.
LemmaInputs random_inputs(LemmaId id, const FieldPtr& f, std::uint64_t seed) {
  Rng rng(seed);
  const bool nonzero = wants_nonzero(id);
  const std::size_t pool = nonzero ? f->q() - 1 : f->q();
  const Element base = nonzero ? 1 : 0;
  if (pool < 2) throw Error(Errc::SizeInfeasible, "field too small for a random instance");
  auto draw = [&](std::size_t lo, std::size_t hi) {
    hi = std::min(hi, pool);
    const std::size_t k = lo + rng.below(hi - lo + 1);
    std::vector<Element> v;
    for (auto i : rng.sample(pool, k)) v.push_back(static_cast<Element>(i) + base);
    return FqSet(f, std::move(v));
  };
  auto subset_of = [&](const FqSet& s) {
    const std::size_t k = 1 + rng.below(s.size());
    std::vector<Element> v;
    for (auto i : rng.sample(s.size(), k)) v.push_back(s[i]);
    return FqSet(f, std::move(v));
  };
  LemmaInputs in{draw(2, 10), std::nullopt, std::nullopt, {}, std::nullopt, std::nullopt, {1, 4}, {}, std::nullopt,
                 1,           0,            Sign::Plus,   SearchMode::Auto, seed};
  switch (id) {
    case LemmaId::RBcard:
      in.a = subset_of(in.x);
      in.b = subset_of(in.x);
      in.r = static_cast<Element>(1 + rng.below(f->q() - 1));
      break;
    case LemmaId::BouGlibPivot:
      in.a = draw(1, 10);
      in.b = draw(1, 10);
      break;
    case LemmaId::RuzsaTriangle:
      in.bs = {draw(1, 10), draw(1, 10)};
      break;
    case LemmaId::Plunnecke:
    case LemmaId::PlunneckeRefined: {
      const std::size_t k = 1 + rng.below(4);
      for (std::size_t i = 0; i < k; ++i) in.bs.push_back(draw(1, 10));
      const Rational eps[] = {{1, 8}, {1, 4}, {1, 2}};
      in.epsilon = eps[rng.below(3)];
      break;
    }
    case LemmaId::CoveringByShifts:
      in.a = subset_of(in.x);
      in.b = subset_of(in.x);
      in.xe = static_cast<Element>(1 + rng.below(f->q() - 1));
      in.ye = static_cast<Element>(rng.below(f->q()));
      in.sign = rng.below(2) == 0 ? Sign::Plus : Sign::Minus;
      break;
    case LemmaId::Popularity: {
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < in.x.size(); ++i) {
        in.weights.push_back(1 + rng.below(5));
        sum += in.weights.back();
      }
      in.k = 1 + rng.below(sum);
      break;
    }
    case LemmaId::EnergyIdentities:
    case LemmaId::EnergyCS:
    case LemmaId::DyadicEnergy:
    case LemmaId::Rudnev:
      in.b = draw(2, in.x.size());
      break;
    default:
      break;
  }
  return in;
}

struct BatchEntry {
  LemmaId lemma;
  std::optional<LemmaReport> report;
  std::string skipped;  // error name when the instance was rejected
};

std::vector<BatchEntry> run_batch(const std::vector<LemmaId>& lemmas, const FieldPtr& f, std::size_t trials,
                                  std::uint64_t seed) {
  const std::size_t n = lemmas.size() * trials;
  std::vector<BatchEntry> slots(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < n; ++t) {
    const LemmaId id = lemmas[t / trials];
    const std::uint64_t trial = t % trials;
    slots[t].lemma = id;
    try {
      const std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(id) * 0x10001 + trial));
      slots[t].report = run_lemma(id, random_inputs(id, f, s));
    } catch (const Error& e) {
      slots[t].skipped = std::string(e.name());
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return slots;
}

std::string report_text(const LemmaReport& r) {
  std::ostringstream o;
  o << std::left << std::setw(18) << lemma_name(r.lemma) << std::setw(14) << verdict_name(r.verdict);
  if (r.ratio) o << " ratio=" << std::setprecision(6) << *r.ratio;
  o << "  " << r.instance << '\n';
  return o.str();
}

std::string summary_csv(const std::vector<BatchEntry>& entries, const std::vector<LemmaId>& lemmas) {
  std::ostringstream o;
  o << "lemma,instances,ExactPass,WitnessFound,MeasuredRatio,Fail,skipped\n";
  for (LemmaId id : lemmas) {
    std::uint64_t counts[4] = {0, 0, 0, 0};
    std::uint64_t total = 0, skipped = 0;
    for (const auto& e : entries) {
      if (e.lemma != id) continue;
      ++total;
      if (e.report) {
        ++counts[static_cast<int>(e.report->verdict)];
      } else {
        ++skipped;
      }
    }
    o << lemma_name(id) << ',' << total << ',' << counts[0] << ',' << counts[1] << ',' << counts[2] << ','
      << counts[3] << ',' << skipped << '\n';
  }
  return o.str();
}

// ---------------------------------------------------------------------------

struct Options {
  // set literals
  std::string set, a, b, target, tile;
  std::optional<Element> r;
  std::string op;
  std::string lemma;
  std::string descriptor;
  Element alpha = 1;
  std::string c, epsilon = "1/4";
  std::vector<std::uint64_t> weights;
  std::optional<std::uint64_t> k;
  Element xe = 1, ye = 0;
  std::string sign = "+";
  std::string mode = "auto";
  std::optional<std::size_t> trials;
  std::optional<std::size_t> size;
  bool timing = false;
  // survey
  std::vector<std::string> fields;
  std::vector<std::size_t> sizes;
  std::vector<std::string> samplers{"uniform"};
  std::size_t survey_trials = 1;
  std::string alpha_policy = "fixed";
  std::optional<unsigned> exhaustive;
  bool nonzero = false;
};

class Runner {
 public:
  Runner(const Globals& g, const Options& o, std::ostream& out) : g_(g), o_(o), out_(out) {}

  void field(const CLI::App* sub) {
    const std::string desc = !o_.descriptor.empty() ? o_.descriptor : g_.field;
    if (desc.empty()) throw UsageError("field: a descriptor p^m is required", sub);
    const FieldPtr f = parse_field(desc, cap_);
    const auto lattice = enumerate_subfields(f);
    std::ostringstream o;
    std::string mod, subs;
    for (auto c : f->modulus()) mod += (mod.empty() ? "" : ",") + std::to_string(c);
    for (const auto& s : lattice) subs += (subs.empty() ? "" : ",") + std::to_string(s.order());
    if (g_.format == "json") {
      json j = to_json(*f);
      j["subfields"] = json::array();
      for (const auto& s : lattice) {
        j["subfields"].push_back({{"degree", s.degree}, {"order", s.order()}, {"proper", s.proper}});
      }
      o << j.dump() << '\n';
    } else if (g_.format == "csv") {
      o << "field,p,m,q,modulus,generator,subfields\n"
        << f->descriptor() << ',' << f->p() << ',' << f->m() << ',' << f->q() << ',' << quoted(mod) << ','
        << f->generator() << ',' << quoted(subs) << '\n';
    } else {
      o << "field      " << f->descriptor() << "\nq          " << f->q() << "\nmodulus    " << mod
        << "  (low degree first)\ngenerator  " << f->generator() << "\nsubfields  " << subs << '\n';
    }
    emit(o.str());
  }

  void setop(const CLI::App* sub) {
    const FieldPtr f = need_field(sub);
    const FqSet a = need_set(o_.a, "--a", f, sub);
    static const std::map<std::string, SetOpKind> binary = {
        {"sum", SetOpKind::Sum}, {"diff", SetOpKind::Diff}, {"prod", SetOpKind::Prod}, {"ratio", SetOpKind::Ratio}};
    std::optional<FqSet> b;
    FqSet result(f);
    if (auto it = binary.find(o_.op); it != binary.end()) {
      b = need_set(o_.b, "--b", f, sub);
      result = set_op(a, *b, it->second);
    } else if (o_.op == "shifted") {
      result = shifted_product(a, o_.alpha);
    } else if (o_.op == "quotient") {
      result = quotient_set(a);
    } else {
      throw UsageError("setop: unknown operation '" + o_.op + "'", sub);
    }
    std::ostringstream o;
    if (g_.format == "json") {
      json j = {{"field", f->descriptor()}, {"op", o_.op}, {"A", to_json(a)["members"]}};
      if (b) j["B"] = to_json(*b)["members"];
      if (o_.op == "shifted") j["alpha"] = o_.alpha;
      j["result"] = to_json(result)["members"];
      j["size"] = result.size();
      o << j.dump() << '\n';
    } else if (g_.format == "csv") {
      o << "op,size,members\n" << o_.op << ',' << result.size() << ',' << quoted(join(result)) << '\n';
    } else {
      o << join(result) << '\n';
    }
    emit(o.str());
  }

  void energy(const CLI::App* sub) {
    const FieldPtr f = need_field(sub);
    const FqSet a = need_set(o_.a, "--a", f, sub);
    const FqSet b = o_.b.empty() ? a : FqSet::parse(f, o_.b);
    const std::uint64_t ep = additive_energy(a);
    const std::uint64_t em = multiplicative_energy(a, b);
    std::ostringstream o;
    if (g_.format == "json") {
      json j = {{"field", f->descriptor()},
                {"A", to_json(a)["members"]},
                {"B", to_json(b)["members"]},
                {"additive_energy", ep},
                {"multiplicative_energy", em}};
      if (!a.contains(0) && !a.empty()) j["spectrum"] = to_json(representation_spectrum(a, b));
      o << j.dump() << '\n';
    } else if (g_.format == "csv") {
      o << "field,size_a,size_b,additive_energy,multiplicative_energy\n"
        << f->descriptor() << ',' << a.size() << ',' << b.size() << ',' << ep << ',' << em << '\n';
    } else {
      o << "E+(A)    " << ep << "\nEx(A,B)  " << em << '\n';
    }
    emit(o.str());
  }

  void verify(const CLI::App* sub) {
    const FieldPtr f = need_field(sub);
    std::vector<LemmaId> lemmas;
    if (o_.lemma == "all") {
      lemmas.assign(std::begin(kAllLemmas), std::end(kAllLemmas));
    } else {
      lemmas.push_back(parse_lemma(o_.lemma));
    }
    std::vector<BatchEntry> entries;
    if (!o_.set.empty()) {
      if (o_.trials) throw UsageError("verify: --trials cannot be combined with --set", sub);
      LemmaInputs in{FqSet::parse(f, o_.set), std::nullopt, std::nullopt, {}, std::nullopt,
                     std::nullopt, parse_rational(o_.epsilon), o_.weights, o_.k, o_.xe, o_.ye,
                     parse_sign(sub), parse_mode(sub), g_.seed};
      if (!o_.a.empty()) in.a = FqSet::parse(f, o_.a);
      if (!o_.b.empty()) in.b = FqSet::parse(f, o_.b);
      in.r = o_.r;
      if (!o_.c.empty()) in.c = parse_rational(o_.c);
      for (LemmaId id : lemmas) {
        try {
          entries.push_back({id, run_lemma(id, in), {}});
        } catch (const Error& e) {
          if (lemmas.size() == 1) throw;
          entries.push_back({id, std::nullopt, std::string(e.name())});
        }
      }
    } else {
      entries = run_batch(lemmas, f, o_.trials.value_or(100), g_.seed);
    }
    std::ostringstream o;
    if (g_.format == "csv") {
      o << summary_csv(entries, lemmas);
    } else {
      for (const auto& e : entries) {
        if (g_.format == "json") {
          if (e.report) {
            o << to_json(*e.report, o_.timing).dump() << '\n';
          } else {
            o << json{{"lemma", lemma_name(e.lemma)}, {"skipped", e.skipped}}.dump() << '\n';
          }
        } else if (e.report) {
          o << report_text(*e.report);
        } else {
          o << std::left << std::setw(18) << lemma_name(e.lemma) << "skipped (" << e.skipped << ")\n";
        }
      }
    }
    emit(o.str());
  }

  void trace(const CLI::App* sub) {
    const FieldPtr f = need_field(sub);
    FqSet a(f);
    if (!o_.set.empty()) {
      a = FqSet::parse(f, o_.set);
    } else {
      // Sampled inside F_q*: the trace rejects sets containing 0.
      const std::size_t size = o_.size.value_or(std::min<std::size_t>(f->q() - 1, 8));
      if (size > f->q() - 1) throw Error(Errc::SizeInfeasible, "--size exceeds q - 1");
      Rng rng(splitmix64(g_.seed));
      std::vector<Element> v;
      for (auto i : rng.sample(f->q() - 1, size)) v.push_back(static_cast<Element>(i) + 1);
      a = FqSet(f, std::move(v));
    }
    TraceParams params{parse_rational(o_.epsilon), g_.kappa, parse_mode(sub)};
    const ProofTrace t = run_proof_trace(a, o_.alpha, params);
    const std::string reason = verify_trace(t, params);
    std::ostringstream o;
    if (g_.format == "json") {
      json j = to_json(t);
      j["verified"] = reason.empty();
      if (!reason.empty()) j["verify_failure"] = reason;
      o << j.dump() << '\n';
    } else if (g_.format == "csv") {
      o << "field,size,alpha,case,shifted_product,difference_size,iterated_size,certificates_hold,verified\n"
        << f->descriptor() << ',' << a.size() << ',' << t.alpha << ',' << case_label(t.label) << ','
        << t.shifted_product << ',' << t.difference_size << ',' << t.iterated_size << ','
        << (t.certificates_hold() ? 1 : 0) << ',' << (reason.empty() ? 1 : 0) << '\n';
    } else {
      o << "A          " << join(a) << "\nalpha      " << t.alpha << "\ncase       " << case_label(t.label)
        << "\n|A(A+a)|   " << t.shifted_product << "\n|A'-A'|    " << t.difference_size
        << "\nA_tilde    " << join(t.points.a_tilde) << '\n';
      for (const auto& c : t.certificates) o << "  [" << (c.holds ? "ok" : "FAIL") << "] " << c.name << '\n';
      o << "verified   " << (reason.empty() ? "yes" : reason) << '\n';
    }
    emit(o.str());
  }

  void survey(const CLI::App* sub) {
    std::vector<std::string> fields = o_.fields;
    if (fields.empty() && !g_.field.empty()) fields.push_back(g_.field);
    if (fields.empty()) throw UsageError("survey: --fields or --field is required", sub);
    if (o_.exhaustive) {
      survey_exhaustive(fields);
      return;
    }
    if (o_.sizes.empty()) throw UsageError("survey: --sizes is required", sub);
    SurveyConfig cfg;
    cfg.fields = fields;
    cfg.sizes = o_.sizes;
    cfg.samplers.clear();
    for (const auto& s : o_.samplers) cfg.samplers.push_back(parse_sampler(s));
    cfg.trials = o_.survey_trials;
    cfg.seed = g_.seed;
    cfg.alpha_policy = o_.alpha_policy == "sweep"    ? AlphaPolicy::Sweep
                       : o_.alpha_policy == "random" ? AlphaPolicy::Random
                                                     : AlphaPolicy::Fixed;
    cfg.alpha = o_.alpha;
    for (const auto& d : fields) parse_field(d, cap_);  // fail fast on bad descriptors
    if (!g_.out.empty()) {
      cfg.output = g_.out;
      const std::string path = run_survey(cfg);
      out_ << path << '\n' << path << ".json\n";
      return;
    }
    const SurveyResult res = collect_survey(cfg);
    std::ostringstream o;
    if (g_.format == "csv") {
      o << survey_csv(res.records);
    } else if (g_.format == "json") {
      o << survey_summary(res).dump() << '\n';
    } else {
      const json s = survey_summary(res);
      for (const auto& c : s["cells"]) {
        o << std::left << std::setw(8) << c["field"].get<std::string>() << " size " << std::setw(4)
          << c["size"].get<std::size_t>() << ' ' << std::setw(8) << c["sampler"].get<std::string>()
          << " n=" << c["records"] << " min=" << c["min_ratio"].get<std::string>()
          << " median=" << c["median_ratio"].get<std::string>()
          << " pass=" << c["structural_pass_fraction"].get<std::string>() << '\n';
      }
      for (const auto& s2 : res.skipped) o << "skipped: " << s2 << '\n';
    }
    emit(o.str());
  }

  void cover(const CLI::App* sub) {
    const FieldPtr f = need_field(sub);
    const FqSet target = need_set(o_.target, "--target", f, sub);
    const FqSet tile = need_set(o_.tile, "--tile", f, sub);
    const Sign sign = parse_sign(sub);
    const CoverMode mode = o_.mode == "exact" ? CoverMode::Exact : o_.mode == "greedy" ? CoverMode::Greedy
                                                                                       : CoverMode::Auto;
    const Cover c = covering_number(target, tile, sign, mode);
    std::ostringstream o;
    std::string shifts;
    for (Element s : c.shifts) shifts += (shifts.empty() ? "" : ",") + std::to_string(s);
    if (g_.format == "json") {
      o << json{{"field", f->descriptor()},
                {"target", to_json(target)["members"]},
                {"tile", to_json(tile)["members"]},
                {"sign", o_.sign},
                {"cover", to_json(c)}}
               .dump()
        << '\n';
    } else if (g_.format == "csv") {
      o << "field,target_size,tile_size,sign,count,exact,greedy_count,shifts\n"
        << f->descriptor() << ',' << target.size() << ',' << tile.size() << ',' << o_.sign << ',' << c.count << ','
        << (c.exact ? 1 : 0) << ',' << c.greedy_count << ',' << quoted(shifts) << '\n';
    } else {
      o << "count   " << c.count << (c.exact ? " (exact)" : " (greedy)") << "\nshifts  " << shifts << '\n';
    }
    emit(o.str());
  }

 private:
  void survey_exhaustive(const std::vector<std::string>& fields) {
    std::ostringstream o;
    if (g_.format == "csv") o << "field,k,alpha,nonzero,min,minimizer_count,subsets_examined\n";
    for (const auto& d : fields) {
      const FieldPtr f = parse_field(d, cap_);
      const MinExpanderResult r = exhaustive_min_expander(f, *o_.exhaustive, o_.alpha, o_.nonzero);
      if (g_.format == "json") {
        json j = to_json(r);
        j["field"] = f->descriptor();
        j["k"] = *o_.exhaustive;
        j["alpha"] = o_.alpha;
        j["nonzero"] = o_.nonzero;
        o << j.dump() << '\n';
      } else if (g_.format == "csv") {
        o << f->descriptor() << ',' << *o_.exhaustive << ',' << o_.alpha << ',' << (o_.nonzero ? 1 : 0) << ','
          << r.min_value << ',' << r.minimizer_count << ',' << r.subsets_examined << '\n';
      } else {
        o << f->descriptor() << " k=" << *o_.exhaustive << " min |A(A+" << o_.alpha << ")| = " << r.min_value
          << " (" << r.minimizer_count << " minimizers of " << r.subsets_examined << ")";
        if (!r.minimizers.empty()) o << " first {" << join(r.minimizers.front()) << "}";
        o << '\n';
      }
    }
    emit(o.str());
  }

  FieldPtr need_field(const CLI::App* sub) const {
    if (g_.field.empty()) throw UsageError(sub->get_name() + ": --field is required", sub);
    return parse_field(g_.field, cap_);
  }

  static FqSet need_set(const std::string& lit, const char* flag, const FieldPtr& f, const CLI::App* sub) {
    if (lit.empty()) throw UsageError(sub->get_name() + ": " + flag + " is required", sub);
    return FqSet::parse(f, lit);
  }

  Sign parse_sign(const CLI::App* sub) const {
    if (o_.sign == "+" || o_.sign == "plus") return Sign::Plus;
    if (o_.sign == "-" || o_.sign == "minus") return Sign::Minus;
    throw UsageError("--sign must be + or -", sub);
  }

  SearchMode parse_mode(const CLI::App* sub) const {
    if (o_.mode == "auto") return SearchMode::Auto;
    if (o_.mode == "exact" || o_.mode == "exhaustive") return SearchMode::Exhaustive;
    if (o_.mode == "greedy") return SearchMode::Greedy;
    throw UsageError("--mode must be auto, exact or greedy", sub);
  }

  void emit(const std::string& text) {
    if (g_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(g_.out, std::ios::binary);
    if (!f) throw Error(Errc::IoFailure, "cannot open " + g_.out);
    f << text;
    if (!f) throw Error(Errc::IoFailure, "write failed: " + g_.out);
  }

  const Globals& g_;
  const Options& o_;
  std::ostream& out_;
  std::uint64_t cap_ = field_cap();
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-field sum-product toolkit", "fqlab"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  Options o;
  const std::vector<std::string> formats{"json", "csv", "text"};
  app.add_option("--field", g.field, "Field descriptor p^m");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--out", g.out, "Write output to this path");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember(formats));
  app.add_option("--kappa", g.kappa, "Structural slack factor")->check(CLI::PositiveNumber);

  auto* field = app.add_subcommand("field", "Describe F_{p^m}: modulus, generator, subfields");
  field->add_option("descriptor", o.descriptor, "p^m (defaults to --field)");

  auto* setop = app.add_subcommand("setop", "A+B, A-B, AB, A/B, A(A+alpha) or R(A)");
  setop->add_option("op", o.op, "sum|diff|prod|ratio|shifted|quotient")->required();
  setop->add_option("--a", o.a, "Set A, e.g. 1,2,5");
  setop->add_option("--b", o.b, "Set B");
  setop->add_option("--alpha", o.alpha, "Shift for 'shifted'");

  auto* energy = app.add_subcommand("energy", "Additive energy of A and multiplicative energy of (A, B)");
  energy->add_option("--a", o.a, "Set A");
  energy->add_option("--b", o.b, "Set B (defaults to A)");

  auto* verify = app.add_subcommand("verify", "Check one lemma (or all) on a given set or on random instances");
  verify->add_option("lemma", o.lemma, "Lemma name or 'all'")->required();
  verify->add_option("--set", o.set, "Main set X; omit for a random batch");
  verify->add_option("--a", o.a, "First auxiliary set");
  verify->add_option("--b", o.b, "Second auxiliary set");
  verify->add_option("--r", o.r, "Dilation r for RBcard");
  verify->add_option("--c", o.c, "Pivot ratio c as n/d");
  verify->add_option("--epsilon", o.epsilon, "Epsilon for PlunneckeRefined as n/d");
  verify->add_option("--weights", o.weights, "Popularity weights")->delimiter(',');
  verify->add_option("--k", o.k, "Popularity total K");
  verify->add_option("--x", o.xe, "Dilation x for CoveringByShifts");
  verify->add_option("--y", o.ye, "Translation y for CoveringByShifts");
  verify->add_option("--sign", o.sign, "+ or -");
  verify->add_option("--mode", o.mode, "Subset search: auto|exact|greedy");
  verify->add_option("--trials", o.trials, "Random instances per lemma (default 100)")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--timing", o.timing, "Include wall time in JSON reports");

  auto* trace = app.add_subcommand("trace", "Replay the case analysis on one set");
  trace->add_option("--set", o.set, "The set A; omit to sample one");
  trace->add_option("--size", o.size, "Size of the sampled set")->check(CLI::PositiveNumber);
  trace->add_option("--alpha", o.alpha, "Shift alpha");
  trace->add_option("--epsilon", o.epsilon, "Refined Plunnecke epsilon as n/d");
  trace->add_option("--mode", o.mode, "Subset search: auto|exact|greedy");

  auto* survey = app.add_subcommand("survey", "Sample sets and measure |A(A+alpha)|");
  survey->add_option("--fields", o.fields, "Field descriptors (defaults to --field)")->delimiter(',');
  survey->add_option("--sizes", o.sizes, "Set sizes")->delimiter(',');
  survey->add_option("--samplers", o.samplers, "uniform|ap|gp|coset")->delimiter(',');
  survey->add_option("--trials", o.survey_trials, "Trials per cell")->check(CLI::PositiveNumber);
  survey->add_option("--alpha-policy", o.alpha_policy, "fixed|sweep|random")
      ->check(CLI::IsMember({"fixed", "sweep", "random"}));
  survey->add_option("--alpha", o.alpha, "Shift for the fixed policy");
  survey->add_option("--exhaustive", o.exhaustive, "Exact minimum over all sets of this size instead");
  survey->add_flag("--nonzero", o.nonzero, "Restrict --exhaustive to subsets of F_q*");

  auto* cover = app.add_subcommand("cover", "Fewest translates of +-tile covering the target");
  cover->add_option("--target", o.target, "Target set");
  cover->add_option("--tile", o.tile, "Tile set");
  cover->add_option("--sign", o.sign, "+ or -");
  cover->add_option("--mode", o.mode, "auto|exact|greedy");

  auto sub_help = [&](const CLI::App* s) {
    err << (s != nullptr ? s->help() : app.help());
  };
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto parsed = app.get_subcommands();
    sub_help(parsed.empty() ? nullptr : parsed.front());
    return 2;
  }

  try {
    Runner run(g, o, out);
    if (field->parsed()) run.field(field);
    if (setop->parsed()) run.setop(setop);
    if (energy->parsed()) run.energy(energy);
    if (verify->parsed()) run.verify(verify);
    if (trace->parsed()) run.trace(trace);
    if (survey->parsed()) run.survey(survey);
    if (cover->parsed()) run.cover(cover);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    sub_help(e.app);
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace fqlab::cli
