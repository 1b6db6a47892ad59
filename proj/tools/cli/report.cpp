#include "report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace surfmmp::cli {

using Json = nlohmann::ordered_json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "validate", "classify", "discrepancies", "multiplier", "rays",         "mmp",
      "dlt-blowup", "diff",   "ioa",           "nklt",       "connectedness", "blowup"};
  return names;
}

namespace {

const char* yes(bool b) { return b ? "yes" : "no"; }

Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) {
    out.push_back(to_string(x));
  }
  return out;
}

Json ids(const Configuration& config, const std::vector<std::size_t>& curves) {
  Json out = Json::array();
  for (auto c : curves) {
    out.push_back(config.curve(c).id);
  }
  return out;
}

Json divisor_json(const Configuration& config, const Divisor& d) {
  Json out = Json::object();
  for (const auto& [i, x] : d.terms()) {
    out[config.curve(i).id] = to_string(x);
  }
  return out;
}

std::string format_divisor(const Configuration& config, const Divisor& d) {
  if (d.empty()) {
    return "0";
  }
  std::string out;
  for (const auto& [i, x] : d.terms()) {
    if (!out.empty()) {
      out += x < 0 ? " - " : " + ";
    } else if (x < 0) {
      out += "-";
    }
    const Rational a = x < 0 ? Rational(-x) : x;
    if (a != 1) {
      out += to_string(a) + " ";
    }
    out += config.curve(i).id;
  }
  return out;
}

std::string join_ids(const Configuration& config, const std::vector<std::size_t>& curves) {
  if (curves.empty()) {
    return "none";
  }
  std::string out;
  for (auto c : curves) {
    out += (out.empty() ? "" : ", ") + config.curve(c).id;
  }
  return out;
}

Json component_json(const Configuration& config, const ContractedComponent& comp) {
  Json out;
  out["curves"] = ids(config, comp.curves);
  out["negative_definite"] = comp.certificate.negative_definite;
  out["leading_minors"] = rationals(comp.certificate.leading_minors);
  if (!comp.certificate.witness.empty()) {
    Json w = Json::array();
    for (const auto& x : comp.certificate.witness) {
      w.push_back(x.str());
    }
    out["witness"] = std::move(w);
  }
  return out;
}

/// Everything needed to re-check crepant coefficients against the document:
/// the contracted set, the minors of each component and the total boundary.
Json model_cert(const Pair& pair, const CrepantData& crepant) {
  const auto& config = pair.config();
  Json out;
  out["contracted"] = ids(config, pair.model().contracted());
  out["components"] = Json::array();
  for (const auto& comp : pair.model().components()) {
    out["components"].push_back(component_json(config, comp));
  }
  out["boundary"] = divisor_json(config, pair.boundary());
  Json e = Json::object();
  for (auto c : pair.model().contracted()) {
    e[config.curve(c).id] = to_string(crepant.e(c));
  }
  out["crepant"] = std::move(e);
  out["total_boundary"] = divisor_json(config, total_boundary(pair, crepant));
  return out;
}

Json model_cert(const Pair& pair) { return model_cert(pair, crepant_coefficients(pair)); }

/// Mumford pullback of a surviving curve, from which C² and every class
/// entry can be recomputed on W.
Json pullback_json(const Model& model, std::size_t c) {
  const auto& config = model.config();
  Json out;
  out["curve"] = config.curve(c).id;
  out["pullback"] = divisor_json(config, model.pullback(Divisor::of_curve(c)));
  return out;
}

Json cone_cert(const Pair& pair, const CurveClasses& classes) {
  const auto& model = pair.model();
  const auto& config = model.config();
  Json out;
  out["rho"] = classes.rho;
  out["basis"] = ids(config, model.surviving_curves());
  out["classes"] = Json::array();
  for (std::size_t i = 0; i < classes.curves.size(); ++i) {
    Json row = pullback_json(model, classes.curves[i]);
    row["class"] = rationals(classes.classes[i]);
    row["log_canonical_degree"] = to_string(
        model.intersect(pair.log_canonical(), DivisorClass::of(Divisor::of_curve(classes.curves[i]))));
    out["classes"].push_back(std::move(row));
  }
  return out;
}

Json ray_json(const Configuration& config, const ExtremalRay& ray) {
  Json out;
  out["curve"] = config.curve(ray.curve).id;
  out["separator"] = rationals(ray.separator);
  out["log_canonical_degree"] = to_string(ray.log_canonical_degree);
  out["self_int"] = to_string(ray.self_int);
  return out;
}

Json flags_json(const SingularityFlags& f) {
  Json out;
  out["terminal"] = f.terminal;
  out["canonical"] = f.canonical;
  out["klt"] = f.klt;
  out["plt"] = f.plt;
  out["dlt"] = f.dlt;
  out["lc"] = f.lc;
  return out;
}

Json step_json(const Configuration& config, const MMPStep& step) {
  Json out;
  out["curve"] = config.curve(step.curve).id;
  out["rho_before"] = step.rho_before;
  out["rho_after"] = step.rho_after;
  out["separator"] = rationals(step.separator);
  out["log_canonical_degree"] = to_string(step.log_canonical_degree);
  out["self_int"] = to_string(step.self_int);
  return out;
}

Json endpoint_json(const Configuration& config, const Endpoint& e) {
  Json out;
  out["kind"] = std::string(to_string(e.kind));
  out["rho"] = e.rho;
  if (e.kind == EndpointKind::kMoriFiberSpace) {
    out["base_rho"] = e.base_rho;
    if (e.witness) {
      out["witness"] = config.curve(*e.witness).id;
      out["witness_self_int"] = to_string(e.witness_self_int);
      out["witness_log_canonical_degree"] = to_string(e.witness_log_canonical_degree);
      out["witness_separator"] = rationals(e.witness_separator);
    }
  }
  return out;
}

std::string format_diff(const CurveDivisor& diff) {
  if (diff.empty()) {
    return "0";
  }
  std::string out;
  for (const auto& t : diff.terms()) {
    if (!out.empty()) {
      out += " + ";
    }
    out += to_string(t.coefficient) + " " + t.point;
    if (t.residue_degree != 1) {
      out += "[deg " + std::to_string(t.residue_degree) + "]";
    }
  }
  return out;
}

Json diff_json(const CurveDivisor& diff) {
  Json terms = Json::array();
  for (const auto& t : diff.terms()) {
    Json term;
    term["point"] = t.point;
    term["coefficient"] = to_string(t.coefficient);
    term["residue_degree"] = t.residue_degree;
    terms.push_back(std::move(term));
  }
  return terms;
}

std::vector<std::size_t> ray_policy(const Request& request, const InputDocument& doc) {
  const auto& names = request.ray_policy.empty() ? doc.options.ray_policy : request.ray_policy;
  std::vector<std::size_t> out;
  for (const auto& id : names) {
    out.push_back(doc.configuration.curve_index(id));
  }
  return out;
}

std::size_t require_curve(const Request& request, const Configuration& config) {
  if (!request.curve) {
    throw ArgumentError(request.command + " needs --curve");
  }
  return config.curve_index(*request.curve);
}

struct Outcome {
  Json result;
  std::ostringstream human;
  int exit_code = kExitOk;
};

void cmd_validate(const InputDocument& doc, Outcome& out) {
  const auto& config = doc.configuration;
  const Model model = doc.model();
  out.result["valid"] = validate_configuration(config).ok();
  out.result["curves"] = config.size();
  out.result["points"] = config.points().size();
  Json chi = Json::object();
  for (std::size_t c = 0; c < config.size(); ++c) {
    chi[config.curve(c).id] = chi_of_curve(config, c);
  }
  out.result["curve_chi"] = std::move(chi);
  out.result["components"] = Json::array();
  for (const auto& comp : model.components()) {
    out.result["components"].push_back(component_json(config, comp));
  }
  out.human << "valid: " << config.size() << " curves, " << config.points().size()
            << " points, " << model.components().size() << " contracted component(s)\n";
  for (const auto& comp : model.components()) {
    out.human << "  {" << join_ids(config, comp.curves) << "}: negative definite, minors";
    for (const auto& m : comp.certificate.leading_minors) {
      out.human << " " << to_string(m);
    }
    out.human << "\n";
  }
}

void cmd_classify(const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto c = classify_pair(pair);
  out.result["primary"] = std::string(to_string(c.primary));
  out.result["flags"] = flags_json(c.flags);
  out.result["numerically_lc"] = c.numerically_lc;
  out.result["dlt_conservative"] = c.dlt_conservative;
  out.result["model"] = model_cert(pair, c.crepant);
  out.human << to_string(c.primary) << "; numerically-lc: " << yes(c.numerically_lc)
            << "; klt: " << yes(c.flags.klt) << "\n";
  out.human << "terminal " << yes(c.flags.terminal) << ", canonical " << yes(c.flags.canonical)
            << ", plt " << yes(c.flags.plt) << ", dlt " << yes(c.flags.dlt) << ", lc "
            << yes(c.flags.lc) << "\n";
  if (c.dlt_conservative) {
    out.human << "dlt-status: conservative\n";
  }
}

void cmd_discrepancies(const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto& config = pair.config();
  const auto crepant = crepant_coefficients(pair);
  out.result["model"] = model_cert(pair, crepant);
  out.result["discrepancies"] = Json::array();
  for (auto c : pair.model().contracted()) {
    Json row;
    row["curve"] = config.curve(c).id;
    row["e"] = to_string(crepant.e(c));
    row["discrepancy"] = to_string(crepant.discrepancy(c));
    row["log_discrepancy"] = to_string(crepant.log_discrepancy(c));
    out.result["discrepancies"].push_back(std::move(row));
    out.human << config.curve(c).id << ": discrepancy " << to_string(crepant.discrepancy(c))
              << ", log discrepancy " << to_string(crepant.log_discrepancy(c)) << "\n";
  }
  if (pair.model().contracted().empty()) {
    out.human << "no contracted curves\n";
  }
}

void cmd_multiplier(const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto md = multiplier_divisor(pair);
  out.result["model"] = model_cert(pair);
  out.result["multiplier_divisor"] = divisor_json(pair.config(), md);
  out.human << "multiplier ideal: pushforward of O_W(" << format_divisor(pair.config(), md)
            << ")\n";
}

void cmd_rays(const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto& fib = doc.require_fibration();
  validate_fibration(pair.model(), fib);
  const auto& config = pair.config();
  const auto classes = curve_classes(pair.model(), fib);
  const auto rays = negative_extremal_rays(pair, classes);
  out.result["model"] = model_cert(pair);
  out.result["cone"] = cone_cert(pair, classes);
  out.result["rays"] = Json::array();
  for (const auto& r : rays) {
    out.result["rays"].push_back(ray_json(config, r));
  }
  out.human << "rho = " << classes.rho << "; " << rays.size()
            << " (K+D)-negative extremal ray(s)\n";
  for (const auto& r : rays) {
    out.human << "  " << config.curve(r.curve).id << ": (K+D).C = "
              << to_string(r.log_canonical_degree) << ", C^2 = " << to_string(r.self_int)
              << "\n";
  }
}

MmpMode parse_mode(const std::string& mode) {
  if (mode == "qf") {
    return MmpMode::kQF;
  }
  if (mode == "lc") {
    return MmpMode::kLC;
  }
  throw ArgumentError("unknown mmp mode '" + mode + "' (expected qf or lc)");
}

void cmd_mmp(const Request& request, const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto& fib = doc.require_fibration();
  const auto mode = parse_mode(request.mode);
  const auto trace = run_mmp(pair, fib, mode, ray_policy(request, doc));
  const auto& config = pair.config();

  out.result["mode"] = std::string(to_string(mode));
  out.result["rho_sequence"] = trace.rho_sequence();
  out.result["steps"] = Json::array();
  Pair current = pair;
  for (const auto& step : trace.steps) {
    Json s = step_json(config, step);
    s["model"] = model_cert(current);
    s["cone"] = cone_cert(current, curve_classes(current.model(), fib));
    out.result["steps"].push_back(std::move(s));
    current = contract_extremal(current, fib, step.curve).pair;
  }
  out.result["endpoint"] = endpoint_json(config, trace.endpoint);
  Json final_model;
  final_model["model"] = model_cert(trace.final_pair);
  final_model["cone"] = cone_cert(trace.final_pair, curve_classes(trace.final_pair.model(), fib));
  out.result["final"] = std::move(final_model);

  out.human << "mmp (" << to_string(mode) << "): " << trace.steps.size() << " step(s)\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& st = trace.steps[i];
    out.human << "  " << i + 1 << ". contract " << config.curve(st.curve).id
              << "  (K+D).C = " << to_string(st.log_canonical_degree)
              << ", C^2 = " << to_string(st.self_int) << ", rho " << st.rho_before << " -> "
              << st.rho_after << "\n";
  }
  const auto& e = trace.endpoint;
  out.human << "endpoint: " << to_string(e.kind) << ", rho " << e.rho;
  if (e.kind == EndpointKind::kMoriFiberSpace && e.witness) {
    out.human << ", witness " << config.curve(*e.witness).id << " (C^2 = "
              << to_string(e.witness_self_int)
              << ", (K+D).C = " << to_string(e.witness_log_canonical_degree) << ")";
  }
  out.human << "\n";
}

void cmd_dlt_blowup(const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto r = dlt_blowup(pair);
  const auto& config = pair.config();

  InputDocument resolved;
  resolved.configuration = r.resolution.config();
  resolved.contracted = r.resolution.model().contracted();
  resolved.q_factorial = r.resolution.model().q_factorial();
  resolved.boundary = r.resolution.boundary();
  resolved.fibration = r.fibration;

  out.result["input_model"] = model_cert(pair);
  out.result["truncated_boundary"] = divisor_json(config, r.truncated_boundary);
  out.result["resolution"] = to_json(resolved);
  out.result["resolution_model"] = model_cert(r.resolution, r.classification.crepant);
  Json trace;
  trace["rho_sequence"] = r.trace.rho_sequence();
  trace["steps"] = Json::array();
  for (const auto& st : r.trace.steps) {
    trace["steps"].push_back(step_json(r.resolution.config(), st));
  }
  out.result["trace"] = std::move(trace);
  out.result["e_prime"] = divisor_json(config, r.e_prime);
  out.result["e_prime_from_crepant"] = divisor_json(config, r.e_prime_from_crepant);
  out.result["e_prime_pullback"] =
      divisor_json(config, r.resolution.model().pullback(r.e_prime));
  out.result["classification"] = flags_json(r.classification.flags);
  out.result["relatively_nef"] = r.relatively_nef;
  out.result["e_prime_effective"] = r.e_prime_effective;
  Json neg;
  neg["verdict"] = std::string(to_string(r.negativity.verdict));
  neg["minus_b_degrees"] = rationals(r.negativity.minus_b_degrees);
  neg["detail"] = r.negativity.detail;
  out.result["negativity"] = std::move(neg);
  out.result["numerically_lc"] = r.numerically_lc;
  out.result["certified"] = r.certified();

  out.human << "dlt blowup: " << r.resolution.model().contracted().size() << " of "
            << doc.contracted.size() << " exceptional curve(s) stay contracted\n";
  out.human << "truncated boundary: " << format_divisor(config, r.truncated_boundary) << "\n";
  out.human << "E' = " << format_divisor(config, r.e_prime) << "\n";
  out.human << "dlt: " << yes(r.classification.flags.dlt) << ", nef over X: "
            << yes(r.relatively_nef) << ", E' effective: " << yes(r.e_prime_effective)
            << ", negativity: " << to_string(r.negativity.verdict) << "\n";
  out.human << "numerically-lc: " << yes(r.numerically_lc) << "; certified: "
            << yes(r.certified()) << "\n";
  if (!r.certified()) {
    out.exit_code = kExitInvariant;
  }
}

void cmd_diff(const Request& request, const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto c = require_curve(request, pair.config());
  const auto diff = diff_divisor(pair, c);
  out.result["curve"] = pair.config().curve(c).id;
  out.result["diff"] = diff_json(diff);
  out.result["degree"] = to_string(degree_on_curve(diff));
  out.result["model"] = model_cert(pair);
  out.human << "Diff on " << pair.config().curve(c).id << ": " << format_diff(diff)
            << " (degree " << to_string(degree_on_curve(diff)) << ")\n";
}

void cmd_ioa(const Request& request, const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto c = require_curve(request, pair.config());
  const auto r = inversion_of_adjunction(pair, c);
  out.result["curve"] = pair.config().curve(c).id;
  out.result["diff"] = diff_json(r.diff);
  out.result["lc_near_curve"] = r.lc_near_curve;
  out.result["plt_near_curve"] = r.plt_near_curve;
  out.result["diff_lc"] = r.diff_lc;
  out.result["diff_klt"] = r.diff_klt;
  out.result["lc_agrees"] = r.lc_agrees();
  out.result["plt_agrees"] = r.plt_agrees();
  out.result["model"] = model_cert(pair);
  auto verdict = [](bool ok) { return ok ? "agree" : "DISAGREE"; };
  out.human << "Diff on " << pair.config().curve(c).id << ": " << format_diff(r.diff) << "\n";
  out.human << "lc near curve: " << yes(r.lc_near_curve) << ", Diff lc: " << yes(r.diff_lc)
            << " (" << verdict(r.lc_agrees()) << ")\n";
  out.human << "plt near curve: " << yes(r.plt_near_curve) << ", Diff klt: "
            << yes(r.diff_klt) << " (" << verdict(r.plt_agrees()) << ")\n";
  if (!r.lc_agrees() || !r.plt_agrees()) {
    out.exit_code = kExitInvariant;
  }
}

void cmd_nklt(const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto& config = pair.config();
  const auto locus = nklt_locus(pair);
  out.result["curves"] = ids(config, locus.curves);
  Json pts = Json::array();
  for (auto p : locus.points) {
    pts.push_back(config.point(p).id);
  }
  out.result["points"] = std::move(pts);
  out.result["model"] = model_cert(pair);
  out.human << "Nklt curves on W: " << join_ids(config, locus.curves) << "\n";
  if (!locus.points.empty()) {
    out.human << "Nklt nodes:";
    for (auto p : locus.points) {
      out.human << " " << config.point(p).id;
    }
    out.human << "\n";
  }
}

void cmd_connectedness(const InputDocument& doc, Outcome& out) {
  const Pair pair = doc.pair();
  const auto& fib = doc.require_fibration();
  validate_fibration(pair.model(), fib);
  const auto& config = pair.config();
  const auto r = connectedness_check(pair, fib);
  out.result["anti_log_canonical_nef"] = r.anti_log_canonical_nef;
  out.result["anti_log_canonical_big"] = r.anti_log_canonical_big;
  Json degrees = Json::object();
  for (auto c : vertical_curves(pair.model(), fib)) {
    degrees[config.curve(c).id] =
        to_string(pair.model().intersect(-pair.log_canonical(), DivisorClass::of(Divisor::of_curve(c))));
  }
  out.result["anti_log_canonical_degrees"] = std::move(degrees);
  out.result["connectedness"] = "dual-graph";
  out.result["fibers"] = Json::array();
  for (const auto& f : r.fibers) {
    Json j;
    j["base_point"] = f.base_point;
    j["verdict"] = std::string(to_string(f.verdict));
    j["piece_count"] = f.piece_count;
    j["component_count"] = f.component_count;
    out.result["fibers"].push_back(std::move(j));
  }
  out.result["model"] = model_cert(pair);
  out.human << "-(K+D) nef: " << yes(r.anti_log_canonical_nef)
            << ", big: " << yes(r.anti_log_canonical_big) << "\n";
  for (const auto& f : r.fibers) {
    out.human << "fiber " << f.base_point << ": " << to_string(f.verdict);
    if (f.verdict == ConnectednessVerdict::kConnected) {
      out.human << " (dual graph)";
    }
    if (f.piece_count > 0) {
      out.human << ", " << f.piece_count << " piece(s) in " << f.component_count
                << " component(s)";
    }
    out.human << "\n";
  }
  if (r.violated()) {
    out.exit_code = kExitInvariant;
  }
}

void cmd_blowup(const Request& request, const InputDocument& doc, Outcome& out) {
  if (!request.point) {
    throw ArgumentError("blowup needs --point");
  }
  const Pair before = doc.pair();
  const auto& config = doc.configuration;
  const auto pi = config.find_point(*request.point);
  if (!pi) {
    throw ArgumentError("unknown point '" + *request.point + "'");
  }
  const auto node = config.point(*pi);
  Configuration blown = blowup_at_node(config, *request.point);
  const std::size_t e = config.size();

  std::optional<Fibration> fib = doc.fibration;
  if (fib) {
    for (auto& [s, f] : fib->fiber_classes) {
      f = blowup_pullback(config, node.id, f);
    }
  }
  if (fib && !blown.curve(e).vertical_over && fib->target_dim != 0) {
    if (fib->target_dim == 1) {
      throw ArgumentError("point '" + node.id +
                          "' joins two horizontal curves; its fiber is not determined");
    }
    // Over a birational base the new curve is the whole fiber of its image.
    auto curves = blown.curves();
    const std::string base = "x(" + curves[e].id + ")";
    curves[e].vertical_over = base;
    fib->base_points.push_back(base);
    blown = Configuration(std::move(curves), blown.matrix(), blown.points(),
                          blown.chi_structure(), blown.canon_self_int());
  }

  InputDocument next = doc;
  next.configuration = blown;
  next.contracted.push_back(e);
  next.fibration = fib;
  // Round trip through the parser for the full set of document checks.
  next = parse_input(serialize(next));

  const auto crepant_before = crepant_coefficients(before);
  const auto total_before = total_boundary(before, crepant_before);
  const Pair after = next.pair();
  const auto crepant_after = crepant_coefficients(after);
  const Rational bi = total_before.coefficient(node.curves[0]);
  const Rational bj = total_before.coefficient(node.curves[1]);
  const Rational predicted = bi + bj - 1;
  if (crepant_after.e(e) != predicted) {
    throw InvariantViolation("crepant coefficient of the new curve is " +
                             to_string(crepant_after.e(e)) + ", blowup recursion gives " +
                             to_string(predicted));
  }
  for (auto c : before.model().contracted()) {
    if (crepant_after.e(c) != crepant_before.e(c)) {
      throw InvariantViolation("crepant coefficient of '" + config.curve(c).id +
                               "' changed under blowup");
    }
  }

  out.result["point"] = node.id;
  out.result["new_curve"] = blown.curve(e).id;
  Json rec;
  rec["b_i"] = to_string(bi);
  rec["b_j"] = to_string(bj);
  rec["e_new"] = to_string(crepant_after.e(e));
  out.result["recursion"] = std::move(rec);
  out.result["input_model"] = model_cert(before, crepant_before);
  out.result["model"] = model_cert(after, crepant_after);
  out.result["document"] = to_json(next);
  out.human << "blew up " << node.id << ": new curve " << blown.curve(e).id << " (E^2 = "
            << blown.curve(e).self_int << ", K.E = " << blown.curve(e).canon_int << ")\n";
  out.human << "e(" << blown.curve(e).id << ") = " << to_string(bi) << " + " << to_string(bj)
            << " - 1 = " << to_string(crepant_after.e(e)) << "\n";
}

Json request_json(const Request& request) {
  Json out;
  out["command"] = request.command;
  if (request.command == "mmp") {
    out["mode"] = request.mode;
    out["ray_policy"] = request.ray_policy;
  }
  if (request.curve) {
    out["curve"] = *request.curve;
  }
  if (request.point) {
    out["point"] = *request.point;
  }
  return out;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant-violation";
  if (dynamic_cast<const ContractionRefused*>(&e)) return "contraction-refused";
  if (dynamic_cast<const BasisInsufficiency*>(&e)) return "basis-insufficiency";
  if (dynamic_cast<const InvalidInput*>(&e)) return "invalid-input";
  if (dynamic_cast<const StructuralError*>(&e)) return "structural";
  if (dynamic_cast<const DocumentError*>(&e)) return "input";
  if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
  return "error";
}

Report error_report(const Request& request, Json machine, const std::exception& e, int code) {
  Report report;
  report.exit_code = code;
  machine["status"] = code == kExitInvariant ? "invariant-violation" : "error";
  machine["exit_code"] = code;
  Json err;
  err["kind"] = error_kind(e);
  err["message"] = e.what();
  if (const auto* d = dynamic_cast<const DocumentError*>(&e)) {
    err["path"] = d->path();
    if (d->line() > 0) {
      err["line"] = d->line();
      err["column"] = d->column();
    }
    err["details"] = d->details();
  }
  machine["error"] = std::move(err);
  report.machine = std::move(machine);
  report.human = std::string(code == kExitInvariant ? "invariant violation: " : "error: ") +
                 e.what() + "\n";
  if (const auto* d = dynamic_cast<const DocumentError*>(&e)) {
    for (const auto& line : d->details()) {
      report.human += "  " + line + "\n";
    }
  }
  (void)request;
  return report;
}

}  // namespace

Report dispatch(const Request& request, const InputDocument& doc) {
  Json machine;
  machine["schema_version"] = kSchemaVersion;
  machine["request"] = request_json(request);
  machine["document"] = to_json(doc);
  Outcome out;
  try {
    const auto& c = request.command;
    if (c == "validate") {
      cmd_validate(doc, out);
    } else if (c == "classify") {
      cmd_classify(doc, out);
    } else if (c == "discrepancies") {
      cmd_discrepancies(doc, out);
    } else if (c == "multiplier") {
      cmd_multiplier(doc, out);
    } else if (c == "rays") {
      cmd_rays(doc, out);
    } else if (c == "mmp") {
      cmd_mmp(request, doc, out);
    } else if (c == "dlt-blowup") {
      cmd_dlt_blowup(doc, out);
    } else if (c == "diff") {
      cmd_diff(request, doc, out);
    } else if (c == "ioa") {
      cmd_ioa(request, doc, out);
    } else if (c == "nklt") {
      cmd_nklt(doc, out);
    } else if (c == "connectedness") {
      cmd_connectedness(doc, out);
    } else if (c == "blowup") {
      cmd_blowup(request, doc, out);
    } else {
      throw ArgumentError("unknown command '" + c + "'");
    }
  } catch (const InvariantViolation& e) {
    return error_report(request, std::move(machine), e, kExitInvariant);
  } catch (const Error& e) {
    return error_report(request, std::move(machine), e, kExitError);
  }
  Report report;
  report.exit_code = out.exit_code;
  machine["status"] = out.exit_code == kExitOk ? "ok" : "invariant-violation";
  machine["exit_code"] = out.exit_code;
  machine["result"] = std::move(out.result);
  report.machine = std::move(machine);
  report.human = out.human.str();
  return report;
}

Report input_error(const Request& request, const DocumentError& error) {
  Json machine;
  machine["schema_version"] = kSchemaVersion;
  machine["request"] = request_json(request);
  return error_report(request, std::move(machine), error, kExitError);
}

Report run_file(const Request& request, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return input_error(request, DocumentError("", "cannot read '" + path + "'"));
  }
  std::ostringstream text;
  text << in.rdbuf();
  InputDocument doc;
  try {
    doc = parse_input(text.str());
  } catch (const DocumentError& e) {
    return input_error(request, e);
  } catch (const Error& e) {
    return input_error(request, DocumentError("", e.what()));
  }
  return dispatch(request, doc);
}

}  // namespace surfmmp::cli
