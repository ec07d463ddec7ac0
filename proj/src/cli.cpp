#include "cdga/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cdga/dsl.hpp"
#include "cdga/error.hpp"
#include "cdga/formality.hpp"
#include "cdga/lefschetz.hpp"
#include "cdga/massey.hpp"
#include "cdga/models.hpp"
#include "cdga/sullivan.hpp"

namespace cdga::cli {

namespace {

using json = nlohmann::ordered_json;

struct FileError {
  std::string message;
};
struct UsageError {
  std::string message;
};

struct Report {
  json doc = json::object();
  std::ostringstream text;
  int code = kExitOk;
};

std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

FreeCDGA load(const std::string& file, std::istream& in) {
  if (file == "-") return parse_algebra(read_all(in));
  if (file.rfind("builtin:", 0) == 0) return builtin(file.substr(8));
  std::ifstream f(file);
  if (!f) throw FileError{"cannot open '" + file + "'"};
  return parse_algebra(read_all(f));
}

int degree_cap(const FreeCDGA& a, std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CDGA_MAX_DEGREE"); env && *env) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(env, &used);
      if (used == std::string(env).size() && v >= 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError{"CDGA_MAX_DEGREE must be a non-negative integer"};
  }
  return a.formal_dim() ? *a.formal_dim() + 2 : 12;
}

void check_degree(int k, int cap) {
  if (k > cap)
    throw UsageError{"degree " + std::to_string(k) + " exceeds the degree cap " + std::to_string(cap) +
                     " (raise it with --max-degree or CDGA_MAX_DEGREE)"};
}

json rationals(const Vector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

std::string tuple(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

template <typename T>
std::string tuple_of(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string span(const std::vector<Element>& xs, const GeneratorSet& g) {
  std::string s = "<";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i], g);
  return s + ">";
}

json elements(const std::vector<Element>& xs, const GeneratorSet& g) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x, g));
  return out;
}

void header(Report& r, const std::string& command, const FreeCDGA& a) {
  r.doc["command"] = command;
  r.doc["algebra"] = a.name();
  if (a.formal_dim()) r.doc["dimension"] = *a.formal_dim();
  r.text << "algebra " << a.name();
  if (a.formal_dim()) r.text << " (dimension " << *a.formal_dim() << ")";
  r.text << "\n";
}

// ---------------------------------------------------------------------------

void cmd_validate(Report& r, const FreeCDGA& a) {
  header(r, "validate", a);
  const ValidationReport v = a.validate();
  json list = json::array();
  for (const auto& x : v.violations) {
    list.push_back({{"kind", x.kind}, {"generator", x.generator}, {"message", x.message}});
    r.text << "violation " << x.kind << (x.generator.empty() ? "" : " at " + x.generator) << ": " << x.message << "\n";
  }
  r.doc["ok"] = v.ok();
  r.doc["violations"] = list;
  r.doc["minimal"] = a.claims_minimal();
  if (v.ok()) r.text << "ok: " << a.generators().size() << " generators, no violations\n";
  r.code = v.ok() ? kExitOk : kExitError;
}

void cmd_betti(Report& r, const FreeCDGA& a, int cap) {
  header(r, "betti", a);
  int through = a.formal_dim() ? std::min(*a.formal_dim(), cap) : cap;
  if (auto t = a.complete_through(); t && *t < through) {
    through = *t;
    r.text << "note: generators are listed through degree " << *t << "\n";
  }
  const auto b = a.betti(through);
  r.doc["through"] = through;
  r.doc["betti"] = b;
  r.text << "betti " << tuple_of(b) << "\n";
}

void cmd_cohomology(Report& r, const FreeCDGA& a, int k, int cap) {
  check_degree(k, cap);
  header(r, "cohomology", a);
  const auto reps = a.cohomology_representatives(k);
  r.doc["degree"] = k;
  r.doc["dim"] = reps.size();
  r.doc["representatives"] = elements(reps, a.generators());
  r.text << "H^" << k << " has dimension " << reps.size() << "\n";
  for (const auto& x : reps) r.text << "  [" << to_string(x, a.generators()) << "]\n";
}

void cmd_minimal_model(Report& r, const FreeCDGA& a, int bound, int cap) {
  check_degree(bound + 1, cap + 1);
  header(r, "minimal-model", a);
  const MinimalModelResult m = minimal_model_up_to(a, bound);
  const auto images = comparison_elements(m, a);
  const auto& g = m.model.generators();
  json gens = json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    gens.push_back({{"name", g.name(i)},
                    {"degree", g.degree(i)},
                    {"d", to_string(m.model.differentials()[i], g)},
                    {"image", to_string(images[i], a.generators())}});
  r.doc["up_to"] = bound;
  r.doc["generators"] = gens;
  r.doc["ranks"] = m.ranks;
  r.doc["model"] = emit(m.model);
  r.text << emit(m.model);
  r.text << "comparison:\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    r.text << "  " << g.name(i) << " -> " << to_string(images[i], a.generators()) << "\n";
  r.text << "ranks on H^0..H^" << bound + 1 << " " << tuple_of(m.ranks) << "\n";
}

json massey_json(const MasseyResult& m, const FreeCDGA& a) {
  json j;
  j["degrees"] = m.degrees;
  j["degree"] = m.degree;
  j["verdict"] = to_string(m.verdict);
  j["representative"] = rationals(m.representative);
  j["representative_element"] = to_string(a.class_representative(m.degree, m.representative), a.generators());
  json ind = json::array();
  for (const auto& v : m.indeterminacy.basis()) ind.push_back(to_string(a.class_representative(m.degree, v), a.generators()));
  j["indeterminacy"] = ind;
  j["affine"] = m.affine;
  j["parameters"] = m.parameters;
  if (!m.note.empty()) j["note"] = m.note;
  return j;
}

void massey_text(std::ostream& out, const MasseyResult& m, const FreeCDGA& a, const std::string& indent) {
  const auto& g = a.generators();
  out << indent << "verdict " << to_string(m.verdict) << "\n";
  out << indent << "representative [" << to_string(a.class_representative(m.degree, m.representative), g) << "] in H^"
      << m.degree << "\n";
  std::vector<Element> ind;
  for (const auto& v : m.indeterminacy.basis()) ind.push_back(a.class_representative(m.degree, v));
  out << indent << "family " << span(ind, g) << "\n";
  if (!m.note.empty()) out << indent << "note: " << m.note << "\n";
}

json verdict_json(const FormalityVerdict& v, const FreeCDGA& a) {
  const auto& g = a.generators();
  json j;
  j["s"] = v.s;
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  j["exactness_bound"] = v.exactness_bound;
  json split = json::array();
  for (const auto& sd : v.splitting.degrees)
    split.push_back({{"degree", sd.degree}, {"C", elements(sd.closed, g)}, {"N", elements(sd.injective, g)}});
  j["splitting"] = split;
  if (v.status == FormalityStatus::SFormal) {
    json phi = json::array();
    for (const auto& e : v.phi) phi.push_back({{"generator", e.generator}, {"degree", e.degree}, {"class", rationals(e.class_coords)}});
    j["phi"] = phi;
  }
  if (v.witness) {
    j["witness"] = {{"element", to_string(v.witness->element, g)},
                    {"degree", v.witness->degree},
                    {"level", v.witness_level},
                    {"n_factor", to_string(v.witness->n_factor, g)},
                    {"m_factor", to_string(v.witness->m_factor, g)},
                    {"class", rationals(v.witness->class_coords)}};
  }
  if (v.robustness) {
    json p = json::array();
    for (std::size_t i = 0; i < v.robustness->perturbations.size(); ++i) {
      const auto& c = v.robustness->classes[i];
      p.push_back({{"element", to_string(v.robustness->perturbations[i], g)},
                   {"class", c.empty() ? json(nullptr) : rationals(c)}});
    }
    j["robustness"] = {{"robust", v.robustness->robust},
                       {"effective_s", v.robustness->effective_s},
                       {"perturbations", p},
                       {"note", v.robustness->note}};
  }
  if (v.massey) {
    json m = massey_json(v.massey->result, a);
    m["basis"] = v.massey->basis;
    j["massey"] = m;
  }
  j["notes"] = v.notes;
  return j;
}

void verdict_text(std::ostream& out, const FormalityVerdict& v, const FreeCDGA& a) {
  const auto& g = a.generators();
  out << "s=" << v.s << ": " << to_string(v.status) << "\n";
  out << "  reason: " << v.reason << "\n";
  for (const auto& sd : v.splitting.degrees) {
    if (sd.closed.empty() && sd.injective.empty()) continue;
    out << "  C^" << sd.degree << " = " << span(sd.closed, g) << ", N^" << sd.degree << " = " << span(sd.injective, g)
        << "\n";
  }
  if (v.status == FormalityStatus::SFormal && !v.phi.empty()) {
    out << "  phi:";
    for (const auto& e : v.phi) out << " " << e.generator << "->" << tuple(e.class_coords);
    out << "\n";
  }
  if (v.witness) {
    out << "  witness " << to_string(v.witness->element, g) << " in degree " << v.witness->degree << ", class "
        << tuple(v.witness->class_coords);
    if (!v.witness->n_factor.is_zero())
      out << " (n = " << to_string(v.witness->n_factor, g) << ", m = " << to_string(v.witness->m_factor, g) << ")";
    out << "\n";
  }
  if (v.robustness) {
    out << "  robustness: " << v.robustness->note << "\n";
    for (std::size_t i = 0; i < v.robustness->perturbations.size(); ++i) {
      const auto& c = v.robustness->classes[i];
      out << "    " << to_string(v.robustness->perturbations[i], g) << " "
          << (c.empty() ? std::string("not closed") : is_zero(c) ? std::string("exact") : "class " + tuple(c)) << "\n";
    }
  }
  if (v.massey) {
    out << "  massey product of basis classes of degrees " << tuple_of(v.massey->degrees) << "\n";
    massey_text(out, v.massey->result, a, "    ");
  }
  for (const auto& n : v.notes) out << "  note: " << n << "\n";
}

void cmd_formality(Report& r, const FreeCDGA& a, std::optional<int> s, bool strict) {
  header(r, "formality", a);
  if (s) {
    const FormalityVerdict v = s_formality(a, *s);
    r.doc["s"] = *s;
    r.doc["status"] = to_string(v.status);
    r.doc["verdict"] = verdict_json(v, a);
    verdict_text(r.text, v, a);
    if (v.status == FormalityStatus::Undecided) r.code = kExitUndecided;
    return;
  }
  const FormalityReport f = formality(a, strict);
  r.doc["s"] = f.s;
  r.doc["status"] = f.status();
  r.doc["verdict"] = verdict_json(f.verdict, a);
  r.text << "formality: " << f.status() << " (decided at s=" << f.s << ")\n";
  verdict_text(r.text, f.verdict, a);
  if (f.strict) {
    r.doc["strict"] = verdict_json(*f.strict, a);
    r.doc["agree"] = f.agree;
    r.text << "strict check:\n";
    verdict_text(r.text, *f.strict, a);
    r.text << "agree: " << (f.agree ? "yes" : "no") << "\n";
    if (!f.agree) r.code = kExitError;
  }
  if (f.verdict.status == FormalityStatus::Undecided && r.code == kExitOk) r.code = kExitUndecided;
}

void cmd_lefschetz(Report& r, const FreeCDGA& a, std::optional<int> s) {
  header(r, "lefschetz", a);
  if (!a.formal_dim()) throw Error(ErrorCode::MissingDimension, "the algebra has no declared dimension");
  const int n = *a.formal_dim() / 2;
  const LefschetzReport L = s_lefschetz(a, s.value_or(n - 1));
  const auto& g = a.generators();
  json degrees = json::array();
  for (const auto& d : L.degrees)
    degrees.push_back({{"i", d.i},
                       {"rank", d.rank},
                       {"source_dim", d.source_dim},
                       {"target_dim", d.target_dim},
                       {"iso", d.iso},
                       {"killers", elements(d.killers, g)}});
  json parity = json::array();
  for (const auto& [k, b] : L.parity) parity.push_back({{"degree", k}, {"betti", b}});
  r.doc["n"] = L.n;
  r.doc["s"] = L.s;
  r.doc["passes"] = L.passes;
  r.doc["degrees"] = degrees;
  r.doc["parity"] = parity;
  r.text << L.s << "-Lefschetz: " << (L.passes ? "yes" : "no") << " (n=" << L.n << ")\n";
  for (const auto& d : L.degrees) {
    r.text << "  i=" << d.i << ": [omega]^" << L.n - d.i << " : H^" << d.i << " -> H^" << 2 * L.n - d.i << " rank "
           << d.rank << " of " << d.source_dim << "->" << d.target_dim << (d.iso ? ", iso" : ", not iso") << "\n";
    for (const auto& k : d.killers) r.text << "    killed: [" << to_string(k, g) << "]\n";
  }
  for (const auto& [k, b] : L.parity) r.text << "  parity: b_" << k << " = " << b << " is odd\n";
}

void cmd_massey(Report& r, const FreeCDGA& a, const std::string& classes) {
  header(r, "massey", a);
  std::vector<Element> xs;
  std::vector<std::string> texts;
  std::stringstream ss(classes);
  for (std::string item; std::getline(ss, item, ';');) {
    xs.push_back(parse_polynomial(item, a.generators()));
    texts.push_back(to_string(xs.back(), a.generators()));
  }
  if (xs.size() < 3) throw UsageError{"--classes needs at least three ';'-separated polynomials"};
  const MasseyResult m = massey_higher(a, xs);
  r.doc["classes"] = texts;
  json j = massey_json(m, a);
  r.text << "<";
  for (std::size_t i = 0; i < texts.size(); ++i) r.text << (i ? ", " : "") << "[" << texts[i] << "]";
  r.text << ">\n";
  massey_text(r.text, m, a, "  ");
  if (xs.size() == 3) {
    const Subspace ind = triple_indeterminacy(a, xs[0], xs[1], xs[2]);
    std::vector<Element> reps;
    for (const auto& v : ind.basis()) reps.push_back(a.class_representative(m.degree, v));
    j["classical_indeterminacy"] = elements(reps, a.generators());
    r.text << "  classical indeterminacy " << span(reps, a.generators()) << "\n";
  }
  r.doc["result"] = j;
  if (m.verdict == MasseyVerdict::Inconclusive) r.code = kExitUndecided;
}

void cmd_donaldson(Report& r, const FreeCDGA& a, std::optional<int> s, bool strict) {
  header(r, "donaldson", a);
  const DonaldsonReport D = donaldson_quotient(a, s, strict);
  const auto& g = a.generators();
  json quotients = json::array();
  r.text << "Donaldson submanifold Z (n=" << D.n << ", s=" << D.s << ")\n";
  for (const auto& q : D.quotients) {
    std::vector<Element> kernel;
    for (const auto& v : q.kernel.basis()) kernel.push_back(a.class_representative(q.p, v));
    quotients.push_back({{"i", q.i},
                         {"p", q.p},
                         {"dim", q.dim},
                         {"basis", elements(q.basis, g)},
                         {"kernel", elements(kernel, g)},
                         {"lefschetz", q.lefschetz}});
    r.text << "  H^" << q.p << "(M)/ker([omega]) has dimension " << q.dim << ", basis " << span(q.basis, g) << "\n";
    r.text << "    dies on Z: " << span(kernel, g) << "\n";
    if (!q.lefschetz) r.text << "    M is not Lefschetz in degree " << q.i << "; this is the image of H^" << q.p << "(M) only\n";
  }
  json z = json::array();
  r.text << "  H*(Z):";
  for (const auto& d : D.z) {
    z.push_back({{"degree", d.degree}, {"dim", d.dim}, {"status", to_string(d.status)}, {"source", d.source}});
    r.text << " " << d.degree << ":";
    if (d.status == ZStatus::Unknown) r.text << "?";
    else r.text << (d.status == ZStatus::LowerBound ? ">=" : "") << d.dim;
  }
  r.text << "\n  note: " << D.note << "\n";
  r.doc["n"] = D.n;
  r.doc["s"] = D.s;
  r.doc["quotients"] = quotients;
  r.doc["z"] = z;
  r.doc["note"] = D.note;
}

int emit_report(const Report& r, bool as_json, std::ostream& out) {
  if (as_json) out << r.doc.dump(2) << "\n";
  else out << r.text.str();
  return r.code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formality, Lefschetz and Massey products for CDGAs over Q", "cdga"};
  app.fallthrough();
  app.require_subcommand(1);
  bool as_json = false;
  std::optional<int> max_degree;
  app.add_flag("--json", as_json, "Print one JSON document instead of text");
  app.add_option("--max-degree", max_degree, "Largest degree computed by betti, cohomology and minimal-model")
      ->check(CLI::NonNegativeNumber);

  std::string file;
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Algebra file, '-' for stdin, or builtin:NAME")->required(); };

  auto* validate = app.add_subcommand("validate", "Check d^2 = 0, degrees, minimality and omega");
  add_file(validate);
  auto* betti = app.add_subcommand("betti", "Betti numbers through the dimension");
  add_file(betti);
  int degree = 0;
  auto* cohomology = app.add_subcommand("cohomology", "Representatives of H^k");
  add_file(cohomology);
  cohomology->add_option("--degree", degree, "Degree k")->required()->check(CLI::NonNegativeNumber);
  int up_to = 0;
  auto* minimal = app.add_subcommand("minimal-model", "Minimal model through a degree");
  add_file(minimal);
  minimal->add_option("--up-to", up_to, "Degree bound")->required()->check(CLI::NonNegativeNumber);
  std::optional<int> s;
  bool strict = false;
  auto* formal = app.add_subcommand("formality", "Formality or s-formality verdict with certificate");
  add_file(formal);
  formal->add_option("--s", s, "Decide s-formality for this s")->check(CLI::NonNegativeNumber);
  formal->add_flag("--strict", strict, "Also decide at s = dimension and compare");
  auto* lefschetz = app.add_subcommand("lefschetz", "s-Lefschetz property of omega");
  add_file(lefschetz);
  lefschetz->add_option("--s", s, "Check degrees i <= s (default n-1)")->check(CLI::NonNegativeNumber);
  std::string classes;
  auto* massey = app.add_subcommand("massey", "Massey product of closed elements");
  add_file(massey);
  massey->add_option("--classes", classes, "Closed polynomials separated by ';'")->required();
  auto* donaldson = app.add_subcommand("donaldson", "Cohomology of a Donaldson submanifold seen from M");
  add_file(donaldson);
  donaldson->add_option("--s", s, "Degrees i <= s (default n-2)")->check(CLI::NonNegativeNumber);
  donaldson->add_flag("--strict", strict, "Require M to be Lefschetz in every degree used");
  std::string example_name;
  auto* example = app.add_subcommand("example", "Print a built-in model in the text format");
  example->add_option("name", example_name, "heisenberg3, kt, iwasawa, fls, fls-minimal, torusN, sphereN, cpN")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'cdga --help' for the command list\n";
    return kExitUsage;
  }

  Report r;
  try {
    if (example->parsed()) {
      out << emit(builtin(example_name));
      return kExitOk;
    }
    const FreeCDGA a = load(file, in);
    if (validate->parsed()) cmd_validate(r, a);
    else if (betti->parsed()) cmd_betti(r, a, degree_cap(a, max_degree));
    else if (cohomology->parsed()) cmd_cohomology(r, a, degree, degree_cap(a, max_degree));
    else if (minimal->parsed()) cmd_minimal_model(r, a, up_to, degree_cap(a, max_degree));
    else if (formal->parsed()) cmd_formality(r, a, s, strict);
    else if (lefschetz->parsed()) cmd_lefschetz(r, a, s);
    else if (massey->parsed()) cmd_massey(r, a, classes);
    else if (donaldson->parsed()) cmd_donaldson(r, a, s, strict);
  } catch (const FileError& e) {
    err << "error: " << e.message << "\n";
    return kExitNoInput;
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (as_json) {
      json j = {{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return emit_report(r, as_json, out);
}

}  // namespace cdga::cli
