// SPDX-License-Identifier: MIT
#pragma once

// catalog_json.hpp -- deterministic JSON serialization of the full catalog.
// Split from catalog.hpp so that expression-level code does not pull in the
// serializer; include this header (or the CLI) to get catalog::catalog_json().

#include "wvlab/catalog.hpp"

#include "json.hpp"

namespace wvlab::catalog {

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json symmetry_to_json(const SymmetryChar& s) {
  ordered_json j;
  j["id"] = s.id;
  j["equation"] = equation_name_str(s.equation);
  j["expr"] = to_string(s.expr);
  j["order"] = s.order;
  j["local"] = s.local;
  j["undamped_only"] = s.undamped_only;
  j["tag"] = s.tag;
  j["note"] = s.note;
  return j;
}

inline ordered_json current_to_json(const ConservedCurrent& c) {
  ordered_json j;
  j["id"] = c.id;
  j["equation"] = equation_name_str(c.equation);
  j["Q"] = to_string(c.Q);
  j["T"] = to_string(c.T);
  j["Phi"] = to_string(c.Phi);
  j["undamped_only"] = c.undamped_only;
  j["on_shell"] = c.on_shell;
  j["tag"] = c.tag;
  j["note"] = c.note;
  return j;
}

inline const char* recursion_id_str(RecursionId id) {
  switch (id) {
    case RecursionId::x_translation: return "x_translation";
    case RecursionId::dilation: return "dilation";
    case RecursionId::westervelt_lifted: return "westervelt_lifted";
  }
  return "?";
}

}  // namespace detail

inline std::string catalog_json() {
  using detail::ordered_json;
  ordered_json root;

  ordered_json syms = ordered_json::array();
  for (const SymmetryChar& s : all_symmetries())
    syms.push_back(detail::symmetry_to_json(s));
  root["symmetries"] = syms;

  ordered_json curs = ordered_json::array();
  for (const ConservedCurrent& c : all_currents())
    curs.push_back(detail::current_to_json(c));
  root["currents"] = curs;

  ordered_json rops = ordered_json::array();
  for (RecursionId id : {RecursionId::x_translation, RecursionId::dilation,
                         RecursionId::westervelt_lifted}) {
    const RecursionOp& r = get_recursion(id);
    ordered_json j;
    j["id"] = detail::recursion_id_str(r.id);
    j["equation"] = equation_name_str(r.equation);
    j["num_coeff_t"] = to_string(r.num_coeff_t);
    j["num_coeff_x"] = to_string(r.num_coeff_x);
    j["denom"] = to_string(r.denom);
    j["tag"] = "recursion-operator";
    rops.push_back(j);
  }
  root["recursion_ops"] = rops;

  {
    const ContactMap& m = contact_map();
    ordered_json fw, iv, j;
    fw["t_star"] = to_string(m.t_star);
    fw["x_star"] = to_string(m.x_star);
    fw["v_star"] = to_string(m.v_star);
    fw["v_star_t"] = to_string(m.v_star_t);
    fw["v_star_x"] = to_string(m.v_star_x);
    iv["t"] = to_string(m.t_of);
    iv["x"] = to_string(m.x_of);
    iv["v"] = to_string(m.v_of);
    iv["v_t"] = to_string(m.v_t_of);
    iv["v_x"] = to_string(m.v_x_of);
    j["forward"] = fw;
    j["inverse"] = iv;
    j["tag"] = "contact-map";
    root["contact_map"] = j;
  }

  {
    ordered_json j;
    j["lagrangian"] = to_string(lagrangian());
    j["legendre_momentum"] = to_string(legendre_momentum());
    j["hamiltonian_density"] = to_string(hamiltonian_density());
    j["tag"] = "variational-structure";
    root["variational"] = j;
  }

  {
    ordered_json j;
    j["potential"] = to_string(jacobian_potential());
    j["westervelt"] = to_string(jacobian_westervelt());
    j["tag"] = "hodograph-jacobian";
    root["jacobian"] = j;
  }

  {
    ordered_json j;
    j["E"] = to_string(integrand_E());
    j["M"] = to_string(integrand_M());
    j["K"] = to_string(integrand_K());
    j["H"] = to_string(integrand_H());
    j["tag"] = "conserved-integrand";
    root["integrands"] = j;
  }

  return root.dump(2) + "\n";
}

}  // namespace wvlab::catalog
