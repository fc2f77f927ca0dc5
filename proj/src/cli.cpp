#include "zipstrata/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "zipstrata/errors.hpp"
#include "zipstrata/fq_oracle.hpp"
#include "zipstrata/serialize.hpp"
#include "zipstrata/verify.hpp"
#include "zipstrata/zip_poset.hpp"

namespace zipstrata {

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::string s;
  for (char c : text)
    if (c != '{' && c != '}' && c != ' ') s.push_back(c);
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("cannot parse " + what + " '" + text + "'");
    }
  }
  return out;
}

std::optional<std::size_t> env_cap() {
  const char* raw = std::getenv("ZIPSTRATA_CAP");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(raw, &used);
    if (used != std::string(raw).size() || v <= 0) throw std::invalid_argument(raw);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("ZIPSTRATA_CAP must be a positive integer, got '") + raw + "'");
  }
}

std::size_t resolve_cap(std::size_t flag, std::size_t fallback) {
  if (flag != 0) return flag;
  if (auto e = env_cap()) return *e;
  return fallback;
}

CartanDatum parse_datum(const std::string& type, const std::string& frobenius) {
  CartanDatum base = parse_cartan_type(type);
  if (frobenius.empty() || frobenius == "split") return base;
  if (frobenius == "twisted") {
    auto aut = standard_diagram_automorphism(base.family, base.rank);
    if (aut.empty()) throw UsageError(base.name() + " has no non-trivial diagram automorphism");
    return CartanDatum::make(base.family, base.rank, aut);
  }
  return parse_cartan_type(type, parse_int_list(frobenius, "--frobenius permutation"));
}

Flavor parse_flavor(const std::string& s) {
  if (s == "EO" || s == "eo") return Flavor::EO;
  if (s == "DL" || s == "dl") return Flavor::DL;
  throw UsageError("flavor must be EO or DL, got '" + s + "'");
}

fq::FqGroupSpec parse_group(const std::string& family, int n, int q, const std::string& weights) {
  fq::FqGroupSpec spec;
  if (family == "gl" || family == "GL")
    spec.family = fq::GroupFamily::GL;
  else if (family == "sl" || family == "SL")
    spec.family = fq::GroupFamily::SL;
  else
    throw UsageError("family must be gl or sl, got '" + family + "'");
  spec.n = n;
  bool found = false;
  for (int p : {2, 3, 5}) {
    int v = 1;
    for (int d = 1; d <= 6 && !found; ++d) {
      v *= p;
      if (v == q) {
        spec.p = p;
        spec.degree = d;
        found = true;
      }
    }
  }
  if (!found) throw UsageError("q must be a power of 2, 3 or 5 not exceeding 64, got " + std::to_string(q));
  if (weights.empty()) {
    for (int i = n - 1; i >= 0; --i) spec.weights.push_back(i);
  } else {
    spec.weights = parse_int_list(weights, "--weights");
  }
  spec.validate();
  return spec;
}

std::string group_name(const fq::FqGroupSpec& s) {
  return fq::to_string(s.family) + "_" + std::to_string(s.n) + "(F_" + std::to_string(s.q()) + ")";
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() { return buf_; }
  void flush() {
    if (path_.empty()) {
      fallback_ << buf_.str();
      return;
    }
    std::ofstream f(path_);
    if (!f) throw UsageError("cannot write " + path_);
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buf_;
};

struct PosetArgs {
  std::string type, I, flavor = "EO", frobenius = "split", side = "left", format = "dot", output, eo_twist = "phi-w0I";
  std::size_t weyl_cap = 0;
};

int cmd_poset(const PosetArgs& a, std::ostream& out) {
  const CartanDatum datum = parse_datum(a.type, a.frobenius);
  const auto g = make_weyl_group(datum, resolve_cap(a.weyl_cap, kDefaultWeylCap));
  const TypeSubset I(datum.rank, parse_int_list(a.I, "--I"));
  EoTwist twist = EoTwist::PhiW0I;
  if (a.eo_twist == "w0K")
    twist = EoTwist::FrameW0K;
  else if (a.eo_twist != "phi-w0I")
    throw UsageError("--eo-twist must be phi-w0I or w0K");
  const Side side = a.side == "right" ? Side::Right : Side::Left;
  if (a.side != "left" && a.side != "right") throw UsageError("--side must be left or right");
  const ZipDatum d = make_zip_datum(g, I, parse_flavor(a.flavor), twist);
  const PosetDocument doc = make_document(d, strata_poset(d, side), side);
  Output o(a.output, out);
  if (a.format == "dot") {
    o.stream() << to_dot(doc);
  } else if (a.format == "json") {
    o.stream() << to_json(doc);
  } else if (a.format == "tsv") {
    o.stream() << "label\tlength\tcovers\n";
    for (std::size_t i = 0; i < doc.labels.size(); ++i) {
      std::string covers;
      for (const auto& [lo, hi] : doc.hasse)
        if (hi == i) covers += (covers.empty() ? "" : ",") + doc.labels[lo];
      o.stream() << doc.labels[i] << '\t' << doc.lengths[i] << '\t' << (covers.empty() ? "-" : covers) << '\n';
    }
  } else {
    throw UsageError("--format must be dot, json or tsv");
  }
  o.flush();
  return kExitOk;
}

struct VerifyArgs {
  int rank_max = 3;
  std::vector<std::string> types;
  bool twisted = false;
  std::string format = "tsv", output;
  std::size_t weyl_cap = 0;
};

const char* yn(bool b) { return b ? "yes" : "no"; }

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.rank_max < 1) throw UsageError("--rank-max must be positive");
  VerifyConfig cfg;
  cfg.rank_max = a.rank_max;
  cfg.types = a.types;
  cfg.include_twisted = a.twisted;
  cfg.weyl_cap = resolve_cap(a.weyl_cap, kDefaultWeylCap);
  const VerifyReport r = run_verify(cfg);
  Output o(a.output, out);
  if (a.format == "json") {
    json j;
    j["schema"] = kJsonSchema;
    j["entries"] = json::array();
    for (const VerifyEntry& e : r.entries) {
      j["entries"].push_back({
          {"type", e.type},
          {"I", e.I.to_string()},
          {"J", e.J.to_string()},
          {"left_reps", e.left_reps},
          {"sigma0_bijective", e.sigma0.bijective},
          {"length_formula", e.sigma0.length_formula},
          {"order_reversal", e.reversal.holds()},
          {"eo_dl_equivalence", e.eo_dl_equivalence.holds()},
          {"eo_dl_equivalence_pairs", e.eo_dl_equivalence.pairs_checked},
          {"w0_conjugation", e.w0_conjugation.ok()},
          {"duality_involutions", e.involutions.ok()},
          {"eo_partial_order", e.eo_partial_order},
          {"dl_partial_order", e.dl_partial_order},
          {"z_orders_coincide", e.z_comparison.orders_coincide},
          {"z_differing_pairs", e.z_comparison.differing_pairs},
          {"z_w0K_partial_order", e.z_comparison.frame_w0K_is_partial_order},
          {"pass", e.mandatory_ok()},
      });
    }
    j["failures"] = r.failures();
    j["pass"] = r.all_ok();
    o.stream() << j.dump(2) << '\n';
  } else if (a.format == "tsv") {
    o.stream() << "type\tI\tJ\t|^IW|\tsigma0_bijective\tlength_formula\torder_reversal\teo_dl_equivalence\tw0_conjugation\t"
                  "duality_involutions\teo_partial_order\tdl_partial_order\tz_orders_coincide\tz_differing_pairs\tpass\n";
    for (const VerifyEntry& e : r.entries)
      o.stream() << e.type << '\t' << e.I.to_string() << '\t' << e.J.to_string() << '\t' << e.left_reps << '\t'
                 << yn(e.sigma0.bijective) << '\t' << yn(e.sigma0.length_formula) << '\t' << yn(e.reversal.holds())
                 << '\t' << yn(e.eo_dl_equivalence.holds()) << '\t' << yn(e.w0_conjugation.ok()) << '\t' << yn(e.involutions.ok())
                 << '\t' << yn(e.eo_partial_order) << '\t' << yn(e.dl_partial_order) << '\t'
                 << yn(e.z_comparison.orders_coincide) << '\t' << e.z_comparison.differing_pairs << '\t'
                 << yn(e.mandatory_ok()) << '\n';
    o.stream() << "# checked " << r.entries.size() << " (type, I) pairs, " << r.failures() << " failing\n";
  } else {
    throw UsageError("--format must be tsv or json");
  }
  o.flush();
  return r.all_ok() ? kExitOk : kExitVerificationFailed;
}

struct GroupArgs {
  std::string family = "gl", weights, format = "tsv", output;
  int n = 2, q = 2;
  std::size_t group_cap = 0;
};

fq::OracleCaps caps_for(const GroupArgs& a) {
  fq::OracleCaps caps;
  caps.group = resolve_cap(a.group_cap, fq::kDefaultGroupCap);
  return caps;
}

struct DlRow {
  int m;
  fq::DlStrataCounts counts;
};

std::vector<DlRow> run_dl(const fq::FqGroupSpec& spec, const std::vector<int>& ms, const fq::OracleCaps& caps) {
  std::vector<DlRow> rows;
  for (int m : ms) {
    if (m < 1) throw UsageError("extension degrees must be positive");
    const fq::FqOracle o(spec, m, caps);
    rows.push_back({m, o.dl_strata_counts(m)});
  }
  return rows;
}

void write_dl_tsv(std::ostream& os, const WeylGroup& g, const std::vector<DlRow>& rows) {
  os << "m\tlabel\tlength\tcount\n";
  for (const auto& r : rows)
    for (const auto& [w, c] : r.counts.counts) os << r.m << '\t' << g.word_string(w) << '\t' << g.length(w) << '\t' << c << '\n';
  os << "\nm\tq^m\ttotal\texpected_total\tunresolved\tempty_labels\n";
  for (const auto& r : rows) {
    std::size_t empty = 0;
    for (const auto& [w, c] : r.counts.counts) empty += c == 0;
    os << r.m << '\t' << r.counts.field_size << '\t' << r.counts.total << '\t' << r.counts.expected_total << '\t'
       << r.counts.unresolved << '\t' << empty << '\n';
  }
}

json dl_json(const WeylGroup& g, const std::vector<DlRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json counts = json::object();
    for (const auto& [w, c] : r.counts.counts) counts[g.word_string(w)] = c;
    arr.push_back({{"m", r.m},
                   {"field_size", r.counts.field_size},
                   {"I_minus", r.counts.I_minus.to_string()},
                   {"counts", counts},
                   {"total", r.counts.total},
                   {"expected_total", r.counts.expected_total},
                   {"unresolved", r.counts.unresolved}});
  }
  return arr;
}

bool dl_ok(const std::vector<DlRow>& rows) {
  for (const auto& r : rows)
    if (!r.counts.conclusive()) return false;
  return true;
}

struct OracleArgs : GroupArgs {
  std::string levels = "1,2", flavor = "EO", dl_m;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const fq::FqGroupSpec spec = parse_group(a.family, a.n, a.q, a.weights);
  if (a.weights.empty()) throw UsageError("--weights is required");
  const auto levels = parse_int_list(a.levels, "--levels");
  if (levels.empty()) throw UsageError("--levels must list at least one level");
  const Flavor flavor = parse_flavor(a.flavor);
  const fq::OracleCaps caps = caps_for(a);
  const fq::FqOracle o(spec, levels.back(), caps);
  const fq::MergeReport r = o.geometric_merge(flavor, levels);
  const WeylGroup& g = *o.weyl_group();
  const auto dl = run_dl(spec, parse_int_list(a.dl_m, "--dl-m"), caps);

  Output out_file(a.output, out);
  std::ostream& os = out_file.stream();
  if (a.format == "json") {
    json j;
    j["schema"] = kJsonSchema;
    j["group"] = group_name(spec);
    j["weights"] = spec.weights;
    j["I"] = spec.type().to_string();
    j["flavor"] = to_string(flavor);
    j["levels"] = levels;
    j["classes_per_level"] = r.counts;
    j["rational_orbits"] = r.rational_orbits_base;
    j["merged"] = r.merged_count;
    j["expected"] = r.expected;
    j["verdict"] = r.verdict();
    j["representatives_distinct"] = r.representatives_distinct;
    j["representatives_cover"] = r.representatives_cover;
    j["bijection_confirmed"] = r.bijection_confirmed();
    json reps = json::array();
    for (const auto& [w, orbit] : r.base.representative_labels)
      reps.push_back({{"label", g.word_string(w)},
                      {"length", g.length(w)},
                      {"orbit", orbit},
                      {"merged_class", r.base.merged_geometric[orbit]},
                      {"orbit_size", r.base.sizes[orbit]}});
    j["representatives"] = reps;
    if (!dl.empty()) j["dl_strata"] = dl_json(g, dl);
    os << j.dump(2) << '\n';
  } else if (a.format == "tsv") {
    os << "group\tweights\tI\tflavor\tlevels\trational_orbits\tmerged\texpected\tverdict\treps_distinct\treps_cover\n";
    os << group_name(spec) << '\t' << join(spec.weights) << '\t' << spec.type().to_string() << '\t'
       << to_string(flavor) << '\t' << join(levels) << '\t' << r.rational_orbits_base << '\t' << r.merged_count << '\t'
       << r.expected << '\t' << r.verdict() << '\t' << yn(r.representatives_distinct) << '\t'
       << yn(r.representatives_cover) << '\n';
    os << "\nlevel\tclasses\n";
    for (std::size_t i = 0; i < levels.size(); ++i) os << levels[i] << '\t' << r.counts[i] << '\n';
    os << "\nlabel\tlength\torbit\tmerged_class\torbit_size\n";
    for (const auto& [w, orbit] : r.base.representative_labels)
      os << g.word_string(w) << '\t' << g.length(w) << '\t' << orbit << '\t' << r.base.merged_geometric[orbit] << '\t'
         << r.base.sizes[orbit] << '\n';
    if (!dl.empty()) {
      os << '\n';
      write_dl_tsv(os, g, dl);
    }
  } else {
    throw UsageError("--format must be tsv or json");
  }
  out_file.flush();
  return r.bijection_confirmed() && dl_ok(dl) ? kExitOk : kExitVerificationFailed;
}

struct DlArgs : GroupArgs {
  std::string m = "1";
};

int cmd_dl(const DlArgs& a, std::ostream& out) {
  const fq::FqGroupSpec spec = parse_group(a.family, a.n, a.q, a.weights);
  const auto ms = parse_int_list(a.m, "--m");
  if (ms.empty()) throw UsageError("--m must list at least one extension degree");
  const auto rows = run_dl(spec, ms, caps_for(a));
  const WeylGroupPtr g = make_weyl_group(CartanDatum::make(Family::A, spec.n - 1));
  Output o(a.output, out);
  if (a.format == "json") {
    json j;
    j["schema"] = kJsonSchema;
    j["group"] = group_name(spec);
    j["weights"] = spec.weights;
    j["I"] = spec.type().to_string();
    j["strata"] = dl_json(*g, rows);
    o.stream() << j.dump(2) << '\n';
  } else if (a.format == "tsv") {
    write_dl_tsv(o.stream(), *g, rows);
  } else {
    throw UsageError("--format must be tsv or json");
  }
  o.flush();
  return dl_ok(rows) ? kExitOk : kExitVerificationFailed;
}

struct WeylArgs {
  std::string type, frobenius = "split", op;
  std::vector<std::string> words;
  std::size_t weyl_cap = 0;
};

ElemId parse_word(const WeylGroup& g, const std::string& text) {
  if (text.empty() || text == "e") return g.identity();
  std::vector<int> word;
  if (text.front() == 's') {
    std::stringstream ss(text);
    char s = 0;
    int i = 0;
    while (ss >> s >> i) {
      if (s != 's') throw UsageError("cannot parse word '" + text + "'");
      word.push_back(i);
    }
    if (!ss.eof()) throw UsageError("cannot parse word '" + text + "'");
  } else {
    word = parse_int_list(text, "word");
  }
  for (int i : word)
    if (i < 1 || i > g.rank()) throw UsageError("simple reflection index " + std::to_string(i) + " out of range");
  return g.from_word(word);
}

int cmd_weyl(const WeylArgs& a, std::ostream& out) {
  const CartanDatum datum = parse_datum(a.type, a.frobenius);
  const auto g = make_weyl_group(datum, resolve_cap(a.weyl_cap, kDefaultWeylCap));
  std::vector<ElemId> xs;
  for (const auto& w : a.words) xs.push_back(parse_word(*g, w));
  auto need = [&](std::size_t k) {
    if (xs.size() != k)
      throw UsageError(a.op + " takes " + std::to_string(k) + " word(s), got " + std::to_string(xs.size()));
  };
  if (a.op == "multiply") {
    ElemId acc = g->identity();
    for (ElemId x : xs) acc = g->mul(acc, x);
    out << g->word_string(acc) << '\n';
  } else if (a.op == "length") {
    need(1);
    out << g->length(xs[0]) << '\n';
  } else if (a.op == "reduced-word") {
    need(1);
    out << g->word_string(xs[0]) << '\n';
  } else if (a.op == "inverse") {
    need(1);
    out << g->word_string(g->inverse(xs[0])) << '\n';
  } else if (a.op == "frobenius") {
    need(1);
    out << g->word_string(g->frobenius(xs[0])) << '\n';
  } else if (a.op == "bruhat") {
    need(2);
    out << (g->bruhat_leq(xs[0], xs[1]) ? "true" : "false") << '\n';
  } else if (a.op == "longest") {
    need(0);
    out << g->word_string(g->longest()) << '\n';
  } else if (a.op == "order") {
    need(0);
    out << g->order() << '\n';
  } else {
    throw UsageError("unknown weyl operation '" + a.op + "'");
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strata posets of algebraic zip data and a finite-field orbit oracle", "zipstrata"};
  app.require_subcommand(1);

  PosetArgs pa;
  auto* poset = app.add_subcommand("poset", "Build and export the strata poset of a zip datum");
  poset->add_option("--type", pa.type, "Cartan type, e.g. A2, C3, G2")->required();
  poset->add_option("--I", pa.I, "Type of P as 1-based indices, e.g. 1,3 (empty for the Borel)");
  poset->add_option("--flavor", pa.flavor, "EO or DL");
  poset->add_option("--frobenius", pa.frobenius, "split, twisted or a permutation such as 3,2,1");
  poset->add_option("--side", pa.side, "left (^I W) or right (W^J)");
  poset->add_option("--eo-twist", pa.eo_twist, "phi-w0I (default) or w0K");
  poset->add_option("--format", pa.format, "dot, json or tsv");
  poset->add_option("-o,--output", pa.output, "Write to this file instead of stdout");
  poset->add_option("--weyl-cap", pa.weyl_cap, "Maximal |W|");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the combinatorial checks over all types and subsets");
  verify->add_option("--rank-max", va.rank_max, "Largest rank to include (default 3)");
  verify->add_option("--type", va.types, "Restrict to these types (repeatable)");
  verify->add_flag("--twisted", va.twisted, "Also run the non-split diagram automorphisms");
  verify->add_option("--format", va.format, "tsv or json");
  verify->add_option("-o,--output", va.output, "Write to this file instead of stdout");
  verify->add_option("--weyl-cap", va.weyl_cap, "Maximal |W|");

  auto add_group = [](CLI::App* sub, GroupArgs& g) {
    sub->add_option("--family", g.family, "gl or sl");
    sub->add_option("--n", g.n, "Matrix size (2..4)");
    sub->add_option("--q", g.q, "Field size q = p^d <= 64");
    sub->add_option("--weights", g.weights, "Weakly decreasing cocharacter weights, e.g. 1,0,0");
    sub->add_option("--format", g.format, "tsv or json");
    sub->add_option("-o,--output", g.output, "Write to this file instead of stdout");
    sub->add_option("--group-cap", g.group_cap, "Maximal |H(F)| for enumeration");
  };

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Orbit bijection check over a finite-field tower");
  add_group(oracle, oa);
  oracle->add_option("--levels", oa.levels, "Extension degrees, ascending, each dividing the next (default 1,2)");
  oracle->add_option("--flavor", oa.flavor, "EO or DL");
  oracle->add_option("--dl-m", oa.dl_m, "Also count fine DL strata over these extensions, e.g. 1,2,3");

  DlArgs da;
  auto* dl = app.add_subcommand("dl-sim", "Point counts of fine Deligne-Lusztig strata on P_-\\H");
  add_group(dl, da);
  dl->add_option("--m", da.m, "Extension degrees, e.g. 3 or 1,2,3");

  WeylArgs wa;
  auto* weyl = app.add_subcommand("weyl", "Weyl group element calculator");
  weyl->add_option("--type", wa.type, "Cartan type")->required();
  weyl->add_option("--frobenius", wa.frobenius, "split, twisted or a permutation");
  weyl->add_option("--weyl-cap", wa.weyl_cap, "Maximal |W|");
  weyl->add_option("op", wa.op,
                   "multiply | length | reduced-word | inverse | frobenius | bruhat | longest | order")
      ->required();
  weyl->add_option("words", wa.words, "Words as 1,2,1 or s1s2s1 or e");

  std::vector<std::string> argv_store{"zipstrata"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << app.help();
    if (!app.get_subcommands().empty()) out.flush();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (poset->parsed()) return cmd_poset(pa, out);
    if (verify->parsed()) return cmd_verify(va, out);
    if (oracle->parsed()) return cmd_oracle(oa, out);
    if (dl->parsed()) return cmd_dl(da, out);
    if (weyl->parsed()) return cmd_weyl(wa, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  return kExitUsage;
}

}  // namespace zipstrata
