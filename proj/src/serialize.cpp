#include "fqlab/serialize.hpp"

#include "fqlab/error.hpp"

namespace fqlab {

namespace {

json members(const FqSet& s) { return json(std::vector<Element>(s.begin(), s.end())); }

const char* sign_name(Sign s) { return s == Sign::Plus ? "+" : "-"; }

}  // namespace

json to_json(const Field& f) {
  return {{"field", f.descriptor()},
          {"p", f.p()},
          {"m", f.m()},
          {"q", f.q()},
          {"modulus", std::vector<std::uint32_t>(f.modulus().begin(), f.modulus().end())},
          {"generator", f.generator()}};
}

json to_json(const FqSet& s) { return {{"field", s.field().descriptor()}, {"members", members(s)}}; }

FqSet set_from_json(const json& j, std::uint64_t cap) {
  if (!j.is_object() || !j.contains("field") || !j.contains("members") || !j["field"].is_string() ||
      !j["members"].is_array()) {
    throw Error(Errc::ParseError, "expected {field, members}");
  }
  const FieldPtr f = parse_field(j["field"].get<std::string>(), cap);
  std::vector<Element> v;
  for (const auto& e : j["members"]) {
    if (!e.is_number_unsigned()) throw Error(Errc::ParseError, "members must be nonnegative integers");
    const auto x = e.get<std::uint64_t>();
    if (x >= f->q()) throw Error(Errc::ElementOutOfRange, std::to_string(x));
    v.push_back(static_cast<Element>(x));
  }
  return FqSet(f, std::move(v));
}

json to_json(const RepSpectrum& s) {
  json counts = json::array();
  for (const auto& [xi, r] : s.counts) counts.push_back({xi, r});
  return {{"counts", counts}, {"total", s.total}, {"energy", s.energy}};
}

json to_json(const ProfileReport& r) {
  json sweep = json::array();
  for (const auto& k : r.sweep) sweep.push_back({{"kappa", k.kappa}, {"pass", k.pass}});
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"degree", e.degree},
                       {"subfield_order", e.subfield_order},
                       {"representative", e.representative},
                       {"intersection", e.intersection},
                       {"pass", e.pass}});
  }
  return {{"exponent", std::to_string(r.exponent_num) + "/" + std::to_string(r.exponent_den)},
          {"set_size", r.set_size},
          {"reference_size", r.reference_size},
          {"kappa", r.kappa},
          {"no_proper_subfields", r.no_proper_subfields},
          {"pass", r.pass},
          {"sweep", sweep},
          {"max_intersection", r.max_intersection},
          {"entries", entries}};
}

json to_json(const DyadicSlice& s) {
  const auto& c = s.certificates;
  return {{"X", members(s.x)},
          {"Y", members(s.y)},
          {"D", members(s.slopes)},
          {"level", s.level},
          {"N", s.n},
          {"L", s.l},
          {"M", s.m},
          {"energy", s.energy},
          {"level_mass", s.level_mass},
          {"points", s.points.size()},
          {"certificates",
           {{"counts_in_range", c.counts_in_range},
            {"energy_bound", c.energy_bound},
            {"ln_at_most_xy", c.ln_at_most_xy},
            {"ln_below_xy", c.ln_below_xy}}}};
}

json to_json(const PopularPoints& p) {
  json steps = json::array();
  for (const auto& s : p.steps) {
    json j = {{"name", s.name},
              {"mass_in", s.mass_in},
              {"mass_kept", s.mass_kept},
              {"domain_size", s.domain_size},
              {"kept_size", s.kept_size},
              {"mass_ok", s.mass_ok}};
    if (s.size_ok) j["size_ok"] = *s.size_ok;
    steps.push_back(std::move(j));
  }
  json bounds = json::array();
  for (const auto& b : p.bounds) {
    bounds.push_back({{"quantity", b.quantity},
                      {"measured", b.measured},
                      {"constant", b.constant.str()},
                      {"form", b.form},
                      {"numerator", b.numerator},
                      {"denominator", b.denominator},
                      {"holds", b.holds}});
  }
  json s = json::array();
  for (const auto& [z, set] : p.s) s.push_back({{"z", z}, {"S_z", members(set)}});
  return {{"x0", p.x0},
          {"y0", p.y0},
          {"A_x0", members(p.a_x0)},
          {"B_y0", members(p.b_y0)},
          {"A_tilde", members(p.a_tilde)},
          {"S", s},
          {"sigma", p.sigma},
          {"best_inner", p.best_inner},
          {"steps", steps},
          {"bounds", bounds},
          {"chain_holds", p.chain_holds}};
}

json to_json(const Cover& c) {
  return {{"count", c.count}, {"shifts", c.shifts}, {"exact", c.exact}, {"greedy_count", c.greedy_count}};
}

json to_json(const LemmaReport& r, bool with_timing) {
  json j = {{"lemma", lemma_name(r.lemma)}, {"instance", r.instance}, {"verdict", verdict_name(r.verdict)}};
  if (r.ratio) j["ratio"] = *r.ratio;
  j["witness"] = r.witness;
  if (with_timing && r.seconds) j["seconds"] = *r.seconds;
  return j;
}

json to_json(const ProofTrace& t) {
  json certs = json::array();
  for (const auto& c : t.certificates) certs.push_back({{"name", c.name}, {"holds", c.holds}});
  json covers = json::array();
  for (const auto& c : t.covers) {
    covers.push_back({{"target", c.target},
                      {"tile", c.tile},
                      {"sign", sign_name(c.sign)},
                      {"target_size", c.target_size},
                      {"tile_size", c.tile_size},
                      {"count", c.count},
                      {"exact", c.exact}});
  }
  json j = {{"field", t.input.field().descriptor()},
            {"A", members(t.input)},
            {"alpha", t.alpha},
            {"working", members(t.working)},
            {"A_prime", members(t.a_prime)},
            {"A_second", members(t.a_second)},
            {"shifted_product", t.shifted_product},
            {"difference_size", t.difference_size},
            {"iterated_size", t.iterated_size},
            {"difference_ratio", t.difference_ratio},
            {"iterated_ratio", t.iterated_ratio},
            {"basic_shift", to_json(t.basic_shift)},
            {"refined_plunnecke", to_json(t.refined_plunnecke)},
            {"slice", to_json(t.slice)},
            {"points", to_json(t.points)},
            {"R_A_tilde", members(t.r_tilde)},
            {"R_B", members(t.r_b)},
            {"case", case_label(t.label)},
            {"witnesses", t.witnesses},
            {"subfield_intersection", t.subfield_intersection},
            {"hypothesis_violated", t.hypothesis_violated},
            {"certificates", certs},
            {"covers", covers},
            {"gamma", t.gamma}};
  if (t.r) j["r"] = *t.r;
  if (t.subfield_degree) j["subfield_degree"] = *t.subfield_degree;
  return j;
}

json to_json(const SurveyRecord& r) {
  return {{"field", r.field},
          {"p", r.p},
          {"m", r.m},
          {"size", r.size},
          {"alpha", r.alpha},
          {"sampler", r.sampler},
          {"seed", r.seed},
          {"shifted_product", r.shifted_product},
          {"theorem_curve", r.theorem_curve},
          {"gs_curve", r.gs_curve},
          {"ratio", r.ratio},
          {"structural_pass", r.structural_pass}};
}

json to_json(const CorollaryRecord& r) {
  return {{"alpha", r.alpha},
          {"intersection", r.intersection},
          {"product_set", r.product_set},
          {"additive_energy", r.additive_energy},
          {"max_intersection", r.max_intersection},
          {"shifted_intersection", r.shifted_intersection},
          {"rhs", r.rhs},
          {"ratio", r.ratio},
          {"energy_chain", r.energy_chain},
          {"shift_chain", r.shift_chain},
          {"structural_pass", r.structural_pass}};
}

json to_json(const MinExpanderResult& r) {
  json ms = json::array();
  for (const auto& m : r.minimizers) ms.push_back(members(m));
  return {{"min", r.min_value},
          {"minimizer_count", r.minimizer_count},
          {"minimizers", ms},
          {"subsets_examined", r.subsets_examined}};
}

}  // namespace fqlab
