#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "koszul/dsl.hpp"
#include "koszul/extensions.hpp"

namespace koszul::report {

using json = nlohmann::ordered_json;

/// Bad command-line usage or a reference to something the document does not
/// define. Maps to exit code 1, like a ParseError.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  int degree_bound = 6;
  long search_bound = 20;
  std::string field;  // "" = take from document; else "q" or "F<p>"
  std::string format = "json";
  std::string aut, sigma_name, tau, xi;
  std::vector<std::string> auts;
  std::string p = "1";
  std::string sub;  // sweep subcommand
  std::map<std::string, Rational> sets;
};

namespace detail {

template <class F>
json mat_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(field_str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F>
json presentation_json(const QuadraticPresentation<F>& pres) {
  json j;
  j["generators"] = pres.generator_names;
  json monos = json::array();
  const std::size_t n = pres.num_generators();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      monos.push_back(pres.generator_names[a] + "*" + pres.generator_names[b]);
  j["relation_monomials"] = std::move(monos);
  j["relations"] = mat_json(pres.relations);
  return j;
}

inline json verdict_json(const CyVerdict& v) {
  json j;
  j["status"] = cy_status_str(v.status);
  if (v.witness) {
    json w = json::array();
    for (long k : *v.witness) w.push_back(k);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["reasons"] = v.reasons;
  j["bound_used"] = v.bound_used;
  return j;
}

template <class F>
json nakayama_description_json(const std::vector<std::string>& base_gens,
                               const std::vector<std::string>& new_gens,
                               const NakayamaDescription<F>& d) {
  json j;
  j["base_generators"] = base_gens;
  j["on_base"] = mat_json(d.on_base);
  j["new_generators"] = new_gens;
  j["on_new_generators"] = mat_json(d.on_new_generators);
  if (d.on_inverse_generators) {
    json inv = json::array();
    for (const auto& v : *d.on_inverse_generators) inv.push_back(field_str(v));
    j["on_inverse_generators"] = std::move(inv);
  }
  return j;
}

template <class F>
struct Instantiated {
  QuadraticPresentation<F> pres;
  const dsl::InputDocument* doc;
  const dsl::ParamValues* values;

  // An empty name falls back to the document's sole block of that kind.
  GradedAut<F> aut(const std::string& name) const {
    const dsl::AutBlock* blk;
    if (name.empty()) {
      if (doc->auts.size() != 1)
        throw InputError("--aut is required (document defines " +
                         std::to_string(doc->auts.size()) + " auts)");
      blk = &doc->auts[0];
    } else {
      blk = doc->find_aut(name);
      if (!blk)
        throw InputError("document defines no aut named '" + name + "'");
    }
    return check_automorphism(pres,
                              dsl::make_aut_matrix<F>(*doc, *blk, *values));
  }
  SigmaHom<F> sigma(const std::string& name) const {
    const dsl::SigmaBlock* blk;
    if (name.empty()) {
      if (doc->sigmas.size() != 1)
        throw InputError("--sigma is required (document defines " +
                         std::to_string(doc->sigmas.size()) + " sigma blocks)");
      blk = &doc->sigmas[0];
    } else {
      blk = doc->find_sigma(name);
      if (!blk)
        throw InputError("document defines no sigma named '" + name + "'");
    }
    return dsl::make_sigma<F>(*doc, *blk, pres, *values);
  }
};

template <class F>
json run_one(const std::string& command, const Instantiated<F>& in,
             const Flags& flags) {
  const auto& pres = in.pres;
  json result;
  if (command == "dual") {
    result["algebra"] = presentation_json(pres);
    result["dual"] = presentation_json(quadratic_dual(pres));
  } else if (command == "hilbert") {
    Algebra<F> alg(pres);
    Algebra<F> dual(quadratic_dual(pres));
    result["dims"] = alg.hilbert(flags.degree_bound);
    result["dual_dims"] = dual.hilbert(flags.degree_bound);
  } else if (command == "koszul-check") {
    Algebra<F> alg(pres);
    auto rep = koszul_check(alg, flags.degree_bound);
    result["label"] = rep.label;
    result["pass"] = rep.pass;
    result["bound"] = rep.bound;
    result["dims"] = rep.dims;
    result["dual_dims"] = rep.dual_dims;
    result["convolution"] = rep.convolution;
  } else if (command == "nakayama") {
    auto nr = nakayama_nu(pres);
    Algebra<F> dual(quadratic_dual(pres));
    auto fd = frobenius_structure(dual);
    result["top_degree"] = nr.top_degree;
    result["lambda"] = mat_json(fd.lambda);
    result["mu"] = mat_json(nr.mu_on_degree1);
    result["nu"] = mat_json(nr.nu_on_generators);
  } else if (command == "hdet") {
    auto th = in.aut(flags.aut);
    result["aut"] = flags.aut;
    result["theta"] = mat_json(th.matrix);
    result["hdet"] = field_str(hdet(pres, th.matrix));
  } else if (command == "ore") {
    OreExtensionSpec<F> spec{pres, in.aut(flags.aut), "t"};
    auto ext = ore_extend(spec);
    result["extension"] = presentation_json(ext);
    result["dims"] = Algebra<F>(ext).hilbert(flags.degree_bound);
    result["nakayama"] = nakayama_description_json(
        pres.generator_names, {"t"}, nakayama_ore(spec, flags.degree_bound));
  } else if (command == "double-ore") {
    DoubleOreSpec<F> spec{pres, in.sigma(flags.sigma_name)};
    auto ext = double_ore_extend(spec);
    result["p"] = field_str(spec.sigma.p);
    result["q"] = field_str(spec.sigma.q);
    result["extension"] = presentation_json(ext);
    result["dims"] = Algebra<F>(ext).hilbert(flags.degree_bound);
    result["nakayama"] = nakayama_description_json(
        pres.generator_names, {spec.y1_name, spec.y2_name},
        nakayama_double_ore(spec, flags.degree_bound));
    auto dr = det_r(pres, spec.sigma);
    result["det_r"] = mat_json(dr.matrix);
    auto w = wxyz(pres, spec.sigma);
    result["wxyz"] = {field_str(w.W), field_str(w.X), field_str(w.Y),
                      field_str(w.Z)};
  } else if (command == "cy-ore") {
    OreExtensionSpec<F> spec{pres, in.aut(flags.aut), "t"};
    result["verdict"] = verdict_json(cy_ore(spec, flags.degree_bound));
  } else if (command == "cy-double-ore") {
    DoubleOreSpec<F> spec{pres, in.sigma(flags.sigma_name)};
    result["verdict"] = verdict_json(cy_double_ore(spec, flags.degree_bound));
    auto w = wxyz(pres, spec.sigma);
    result["wxyz"] = {field_str(w.W), field_str(w.X), field_str(w.Y),
                      field_str(w.Z)};
  } else if (command == "cy-laurent") {
    auto v = cy_skew_laurent(pres, in.aut(flags.aut), flags.search_bound,
                             flags.degree_bound);
    result["verdict"] = verdict_json(v);
    result["note"] =
        "a witness n satisfies theta^n = nu; the localization argument's "
        "inner exponent is n-1";
  } else if (command == "cy-laurent-diagonal") {
    if (flags.tau.empty() || flags.xi.empty())
      throw InputError("cy-laurent-diagonal requires --tau and --xi");
    F p = field_from_rational<F>(parse_rational(flags.p));
    auto v = cy_laurent_diagonal(pres, p, in.aut(flags.tau), in.aut(flags.xi),
                                 flags.search_bound, flags.degree_bound);
    result["verdict"] = verdict_json(v);
    if (p != F(1))
      result["note"] =
          "criterion used: hdet(tau) = p^m and hdet(xi) = p^(-n); the weaker "
          "form hdet(tau) = hdet(xi) = 1 holds only at p = 1";
  } else if (command == "cy-iterated" || command == "cy-iterated-laurent") {
    if (flags.auts.empty()) throw InputError(command + " requires --auts");
    IteratedSpec<F> spec{pres, {}, {}};
    for (const auto& name : flags.auts) {
      spec.thetas.push_back(in.aut(name));
      spec.names.push_back("y" + std::to_string(spec.names.size() + 1));
    }
    if (command == "cy-iterated") {
      result["verdict"] = verdict_json(cy_iterated(spec, flags.degree_bound));
    } else {
      auto v =
          cy_iterated_laurent(spec, flags.search_bound, flags.degree_bound);
      result["verdict"] = verdict_json(v);
      result["note"] =
          "a witness (k_1,...,k_m) satisfies theta_1^{k_1}...theta_m^{k_m} = "
          "nu; inner exponents are shifted by one";
    }
  } else {
    throw InputError("unknown command '" + command + "'");
  }
  return result;
}

template <class F>
json run_field(const std::string& command, const dsl::InputDocument& doc,
               const Flags& flags) {
  if (command == "sweep") {
    if (flags.sub.empty() || flags.sub == "sweep")
      throw InputError("sweep requires --command <subcommand>");
    std::vector<const dsl::ParamDecl*> grid_params;
    for (const auto& p : doc.params)
      if (!p.grid.empty()) grid_params.push_back(&p);
    json rows = json::array();
    std::vector<std::size_t> idx(grid_params.size(), 0);
    bool done = false;
    // lexicographic odometer over the declared grids
    if (grid_params.empty()) {
      json table;
      table["rows"] = rows;
      return table;
    }
    while (true) {
      dsl::ParamValues values = flags.sets;
      json point;
      for (std::size_t i = 0; i < grid_params.size(); ++i) {
        values[grid_params[i]->name] = grid_params[i]->grid[idx[i]];
        point[grid_params[i]->name] =
            dsl::detail::rational_str(grid_params[i]->grid[idx[i]]);
      }
      json row;
      row["params"] = point;
      try {
        Instantiated<F> in{dsl::make_presentation<F>(doc, values), &doc,
                           &values};
        row["result"] = run_one(flags.sub, in, flags);
      } catch (const EngineError& e) {
        row["error"] = {{"kind", e.kind()}, {"message", e.what()}};
      }
      rows.push_back(std::move(row));
      std::size_t i = grid_params.size();
      while (i > 0) {
        --i;
        if (++idx[i] < grid_params[i]->grid.size()) break;
        idx[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
    json table;
    table["subcommand"] = flags.sub;
    table["rows"] = std::move(rows);
    return table;
  }
  dsl::ParamValues values = flags.sets;
  // a parameter declared with a single-value grid binds that value directly
  for (const auto& p : doc.params)
    if (p.grid.size() == 1 && !values.count(p.name)) values[p.name] = p.grid[0];
  Instantiated<F> in{dsl::make_presentation<F>(doc, values), &doc, &values};
  return run_one(command, in, flags);
}

}  // namespace detail

inline json run(const std::string& command, const dsl::InputDocument& doc,
                const Flags& flags) {
  std::string field = flags.field;
  if (field.empty())
    field = doc.field.rational ? "q" : "F" + std::to_string(doc.field.prime);
  json out;
  out["schema"] = 1;
  out["command"] = command;
  out["field"] = field;
  out["degree_bound"] = flags.degree_bound;
  out["search_bound"] = flags.search_bound;
  if (field == "q" || field == "Q") {
    out["result"] = detail::run_field<Rational>(command, doc, flags);
  } else if ((field[0] == 'F' || field[0] == 'f') && field.size() > 1) {
    long p = 0;
    std::size_t used = 0;
    try {
      p = std::stol(field.substr(1), &used);
    } catch (const std::exception&) {
      throw InputError("bad field '" + field + "' (expected q or F<p>)");
    }
    if (used != field.size() - 1)
      throw InputError("bad field '" + field + "' (expected q or F<p>)");
    if (p < 2) throw InputError("bad prime in field '" + field + "'");
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0)
        throw InputError("bad prime in field '" + field + "'");
    PrimeField::set_modulus(p);
    out["result"] = detail::run_field<PrimeField>(command, doc, flags);
  } else {
    throw InputError("bad field '" + field + "' (expected q or F<p>)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text rendering

namespace detail {

inline void render_value(std::ostream& os, const json& v, int indent);

inline std::string inline_array(const json& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    const auto& e = a[i];
    if (e.is_string())
      s += e.template get<std::string>();
    else if (e.is_array())
      s += inline_array(e);
    else
      s += e.dump();
  }
  return s + "]";
}

inline void render_value(std::ostream& os, const json& v, int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.value().is_object() ||
          (it.value().is_array() && !it.value().empty() &&
           it.value()[0].is_object())) {
        os << pad << it.key() << ":\n";
        if (it.value().is_object()) {
          render_value(os, it.value(), indent + 2);
        } else {
          for (const auto& row : it.value()) {
            os << pad << "  -\n";
            render_value(os, row, indent + 4);
          }
        }
      } else if (it.value().is_array()) {
        os << pad << it.key() << ": " << inline_array(it.value()) << "\n";
      } else if (it.value().is_string()) {
        os << pad << it.key() << ": " << it.value().template get<std::string>()
           << "\n";
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    os << pad << inline_array(v) << "\n";
  } else {
    os << pad << v.dump() << "\n";
  }
}

}  // namespace detail

inline std::string render_text(const json& report) {
  std::ostringstream os;
  detail::render_value(os, report, 0);
  return os.str();
}

inline std::string render(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "text") return render_text(report);
  throw InputError("unknown format '" + format + "' (expected json or text)");
}

}  // namespace koszul::report
