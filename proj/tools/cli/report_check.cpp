#include "report_check.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include <boost/multiprecision/gmp.hpp>

namespace surfmmp::cli {

namespace {

using Json = nlohmann::ordered_json;
using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;
using Vec = std::vector<Q>;

Q rat(const Json& j) {
  if (j.is_number_integer()) {
    return Q(j.get<std::int64_t>());
  }
  return Q(j.get<std::string>());
}

Z ceil_of(const Q& x) {
  const Z n = boost::multiprecision::numerator(x);
  const Z d = boost::multiprecision::denominator(x);
  Z q = n / d;  // truncates toward zero
  if (q * d != n && n > 0) {
    q += 1;
  }
  return q;
}

struct Point {
  std::string id;
  std::size_t a = 0;
  std::size_t b = 0;
  std::int64_t degree = 1;
};

/// Ambient data read straight from a document.
struct Ambient {
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<Q>> m;
  Vec kappa;
  Vec self;
  std::vector<Point> points;
  std::vector<bool> contracted;
  Vec boundary;

  std::size_t n() const { return ids.size(); }
  std::size_t at(const Json& id) const { return index.at(id.get<std::string>()); }

  Q form(const Vec& a, const Vec& b) const {
    Q s = 0;
    for (std::size_t i = 0; i < n(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n(); ++j) {
        if (b[j] != 0) s += a[i] * m[i][j] * b[j];
      }
    }
    return s;
  }
  Q with_curve(const Vec& a, std::size_t c) const {
    Q s = 0;
    for (std::size_t i = 0; i < n(); ++i) s += a[i] * m[i][c];
    return s;
  }
  Q canonical(const Vec& a) const {
    Q s = 0;
    for (std::size_t i = 0; i < n(); ++i) s += a[i] * kappa[i];
    return s;
  }
  Vec dense(const Json& divisor) const {
    Vec v(n(), 0);
    for (const auto& [id, x] : divisor.items()) v[index.at(id)] = rat(x);
    return v;
  }
};

Ambient read_document(const Json& doc) {
  Ambient w;
  const auto& cfg = doc.at("configuration");
  for (const auto& c : cfg.at("curves")) {
    w.index[c.at("id").get<std::string>()] = w.ids.size();
    w.ids.push_back(c.at("id").get<std::string>());
    w.kappa.push_back(rat(c.at("canon_int")));
    w.self.push_back(rat(c.at("self_int")));
  }
  for (const auto& row : cfg.at("matrix")) {
    Vec r;
    for (const auto& x : row) r.push_back(rat(x));
    w.m.push_back(std::move(r));
  }
  for (const auto& p : cfg.at("points")) {
    w.points.push_back({p.at("id").get<std::string>(), w.at(p.at("curves")[0]),
                        w.at(p.at("curves")[1]), p.at("residue_degree").get<std::int64_t>()});
  }
  w.contracted.assign(w.n(), false);
  for (const auto& c : doc.at("model").at("contracted")) w.contracted[w.at(c)] = true;
  w.boundary = w.dense(doc.at("pair").at("boundary"));
  return w;
}

Q determinant(std::vector<Vec> a) {
  const std::size_t k = a.size();
  Q det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && a[p][c] == 0) ++p;
    if (p == k) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      const Q f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

std::size_t rank(std::vector<Vec> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Q dot(const Vec& a, const Vec& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

bool positively_proportional(const Vec& g, const Vec& c) {
  std::optional<Q> lambda;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) {
      lambda = g[i] / c[i];
      break;
    }
  }
  if (!lambda || *lambda <= 0) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (g[i] != *lambda * c[i]) return false;
  }
  return true;
}

struct ModelData {
  std::vector<bool> contracted;
  Vec total;
};

struct ClassData {
  Vec cls;
  Vec pullback;
  Q log_canonical_degree;
  Q self_int;
};

struct ConeData {
  std::size_t rho = 0;
  std::map<std::size_t, ClassData> classes;
};

class Checker {
 public:
  explicit Checker(CheckResult& r) : r_(r) {}

  void claim(bool ok, const std::string& what) {
    ++r_.claims;
    if (!ok) r_.failures.push_back(what);
  }

  void components(const Ambient& w, const std::vector<bool>& contracted, const Json& comps) {
    std::vector<bool> seen(w.n(), false);
    for (const auto& comp : comps) {
      std::vector<std::size_t> cs;
      for (const auto& id : comp.at("curves")) cs.push_back(w.at(id));
      const auto& minors = comp.at("leading_minors");
      claim(comp.at("negative_definite").get<bool>() && minors.size() == cs.size(),
            "component certificate is incomplete");
      for (std::size_t k = 1; k <= cs.size() && k <= minors.size(); ++k) {
        std::vector<Vec> sub(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = w.m[cs[i]][cs[j]];
        const Q d = determinant(sub);
        claim(d == rat(minors[k - 1]), "leading minor " + std::to_string(k) + " of {" +
                                           w.ids[cs[0]] + ", ...} does not match");
        claim(k % 2 == 1 ? d < 0 : d > 0, "leading minor " + std::to_string(k) + " of {" +
                                              w.ids[cs[0]] + ", ...} has the wrong sign");
      }
      for (auto c : cs) {
        claim(contracted[c] && !seen[c], "component lists '" + w.ids[c] + "' wrongly");
        seen[c] = true;
      }
    }
    claim(seen == contracted, "components do not cover the contracted set");
  }

  /// Crepant re-substitution: (K_W + T)·E = 0 for every contracted E, with
  /// T equal to the boundary off the contracted curves.
  ModelData model(const Ambient& w, const Json& cert) {
    ModelData md;
    md.contracted.assign(w.n(), false);
    for (const auto& id : cert.at("contracted")) md.contracted[w.at(id)] = true;
    md.total = w.dense(cert.at("total_boundary"));
    const Vec boundary = w.dense(cert.at("boundary"));
    const Vec e = w.dense(cert.at("crepant"));
    for (std::size_t i = 0; i < w.n(); ++i) {
      if (md.contracted[i]) {
        claim(md.total[i] == e[i], "total boundary on '" + w.ids[i] + "' differs from its e");
        claim(w.kappa[i] + w.with_curve(md.total, i) == 0,
              "(K+T).E != 0 for contracted '" + w.ids[i] + "'");
      } else {
        claim(md.total[i] == boundary[i] && e[i] == 0,
              "total boundary on surviving '" + w.ids[i] + "' is not its boundary coefficient");
      }
    }
    components(w, md.contracted, cert.at("components"));
    return md;
  }

  ModelData document_model(const Ambient& w, const Json& cert) {
    ModelData md = model(w, cert);
    claim(md.contracted == w.contracted, "certificate contracts a different set than the document");
    claim(w.dense(cert.at("boundary")) == w.boundary, "certificate boundary differs from the document");
    return md;
  }

  Vec pullback(const Ambient& w, const ModelData& md, const Json& j, std::size_t c) {
    const Vec p = w.dense(j.at("pullback"));
    for (std::size_t i = 0; i < w.n(); ++i) {
      if (i == c) {
        claim(p[i] == 1, "pullback of '" + w.ids[c] + "' does not contain it once");
      } else if (!md.contracted[i]) {
        claim(p[i] == 0, "pullback of '" + w.ids[c] + "' meets surviving '" + w.ids[i] + "'");
      } else {
        claim(w.with_curve(p, i) == 0,
              "pullback of '" + w.ids[c] + "' is not orthogonal to '" + w.ids[i] + "'");
      }
    }
    return p;
  }

  ConeData cone(const Ambient& w, const ModelData& md, const Json& cert) {
    ConeData cd;
    std::vector<std::size_t> basis;
    for (const auto& id : cert.at("basis")) basis.push_back(w.at(id));
    std::vector<std::size_t> surviving;
    for (std::size_t i = 0; i < w.n(); ++i)
      if (!md.contracted[i]) surviving.push_back(i);
    claim(basis == surviving, "class basis is not the surviving curves");
    std::vector<Vec> rows;
    for (const auto& row : cert.at("classes")) {
      const std::size_t c = w.at(row.at("curve"));
      claim(!md.contracted[c], "class of contracted '" + w.ids[c] + "'");
      ClassData data;
      data.pullback = pullback(w, md, row, c);
      for (const auto& x : row.at("class")) data.cls.push_back(rat(x));
      claim(data.cls.size() == basis.size(), "class of '" + w.ids[c] + "' has the wrong length");
      for (std::size_t j = 0; j < basis.size() && j < data.cls.size(); ++j) {
        claim(data.cls[j] == w.with_curve(data.pullback, basis[j]),
              "class entry of '" + w.ids[c] + "' against '" + w.ids[basis[j]] + "'");
      }
      data.log_canonical_degree = rat(row.at("log_canonical_degree"));
      claim(data.log_canonical_degree == w.kappa[c] + w.with_curve(md.total, c),
            "(K+D)." + w.ids[c] + " does not match the total boundary");
      data.self_int = w.with_curve(data.pullback, c);
      rows.push_back(data.cls);
      cd.classes[c] = std::move(data);
    }
    cd.rho = cert.at("rho").get<std::size_t>();
    claim(cd.rho == rank(rows), "rho is not the rank of the vertical classes");
    return cd;
  }

  void separator(const Ambient& w, const ConeData& cd, std::size_t c, const Json& z_json) {
    Vec z;
    for (const auto& x : z_json) z.push_back(rat(x));
    const auto it = cd.classes.find(c);
    claim(it != cd.classes.end(), "'" + w.ids[c] + "' has no class");
    if (it == cd.classes.end()) return;
    claim(dot(z, it->second.cls) < 0, "separator is not negative on '" + w.ids[c] + "'");
    for (const auto& [g, data] : cd.classes) {
      if (g != c && !positively_proportional(data.cls, it->second.cls)) {
        claim(dot(z, data.cls) >= 0,
              "separator of '" + w.ids[c] + "' is negative on '" + w.ids[g] + "'");
      }
    }
  }

  void negative_ray(const Ambient& w, const ConeData& cd, const Json& ray) {
    const std::size_t c = w.at(ray.at("curve"));
    separator(w, cd, c, ray.at("separator"));
    const auto it = cd.classes.find(c);
    if (it == cd.classes.end()) return;
    const Q lcd = rat(ray.at("log_canonical_degree"));
    claim(lcd == it->second.log_canonical_degree && lcd < 0,
          "ray '" + w.ids[c] + "' is not (K+D)-negative");
    claim(rat(ray.at("self_int")) == it->second.self_int, "C^2 of ray '" + w.ids[c] + "'");
  }

 private:
  CheckResult& r_;
};

struct Flags {
  bool terminal, canonical, klt, plt, dlt, lc;
};

Flags flags_from_total(const Ambient& w, const ModelData& md) {
  Flags f{};
  bool le1 = true, lt1 = true, exc_lt1 = true, exc_le0 = true, exc_lt0 = true;
  for (std::size_t i = 0; i < w.n(); ++i) {
    le1 = le1 && md.total[i] <= 1;
    lt1 = lt1 && md.total[i] < 1;
    if (md.contracted[i]) {
      exc_lt1 = exc_lt1 && md.total[i] < 1;
      exc_le0 = exc_le0 && md.total[i] <= 0;
      exc_lt0 = exc_lt0 && md.total[i] < 0;
    }
  }
  bool reduced_node = false, nodes_le1 = true, nodes_lt1 = true;
  for (const auto& p : w.points) {
    const Q s = md.total[p.a] + md.total[p.b];
    reduced_node = reduced_node || (md.total[p.a] == 1 && md.total[p.b] == 1);
    nodes_le1 = nodes_le1 && s <= 1;
    nodes_lt1 = nodes_lt1 && s < 1;
  }
  f.lc = le1;
  f.klt = lt1;
  f.dlt = le1 && exc_lt1;
  f.plt = f.dlt && !reduced_node;
  f.canonical = le1 && exc_le0 && nodes_le1;
  f.terminal = lt1 && exc_lt0 && nodes_lt1;
  return f;
}

std::string strongest(const Flags& f) {
  if (f.terminal) return "terminal";
  if (f.canonical) return "canonical";
  if (f.klt) return "klt";
  if (f.plt) return "plt";
  if (f.dlt) return "dlt";
  if (f.lc) return "lc";
  return "none";
}

void check_flags(Checker& ck, const Flags& f, const Json& j) {
  ck.claim(j.at("terminal").get<bool>() == f.terminal, "terminal flag");
  ck.claim(j.at("canonical").get<bool>() == f.canonical, "canonical flag");
  ck.claim(j.at("klt").get<bool>() == f.klt, "klt flag");
  ck.claim(j.at("plt").get<bool>() == f.plt, "plt flag");
  ck.claim(j.at("lc").get<bool>() == f.lc, "lc flag");
}

void check_diff(Checker& ck, const Ambient& w, const ModelData& md, std::size_t c,
                const Json& diff, const Json* degree) {
  ck.claim(!md.contracted[c] && w.boundary[c] == 1, "Diff host does not have coefficient 1");
  std::map<std::string, std::pair<Q, std::int64_t>> expected;
  for (const auto& p : w.points) {
    if (p.a != c && p.b != c) continue;
    const std::size_t other = p.a == c ? p.b : p.a;
    if (md.total[other] != 0) expected[p.id] = {md.total[other], p.degree};
  }
  std::map<std::string, std::pair<Q, std::int64_t>> got;
  Q deg = 0;
  for (const auto& t : diff) {
    got[t.at("point").get<std::string>()] = {rat(t.at("coefficient")),
                                              t.at("residue_degree").get<std::int64_t>()};
    deg += rat(t.at("coefficient")) * t.at("residue_degree").get<std::int64_t>();
  }
  ck.claim(got == expected, "Diff on '" + w.ids[c] + "' does not match the adjacent coefficients");
  if (degree) {
    ck.claim(rat(*degree) == deg, "degree of Diff");
  }
}

void check_result(Checker& ck, const Json& report) {
  const Json& request = report.at("request");
  const std::string command = request.at("command").get<std::string>();
  const Ambient w = read_document(report.at("document"));
  const Json& r = report.at("result");

  if (command == "validate") {
    ck.components(w, w.contracted, r.at("components"));
    for (std::size_t i = 0; i < w.n(); ++i) {
      ck.claim(rat(r.at("curve_chi").at(w.ids[i])) == -(w.self[i] + w.kappa[i]) / 2,
               "chi of '" + w.ids[i] + "'");
    }
  } else if (command == "classify") {
    const auto md = ck.document_model(w, r.at("model"));
    const Flags f = flags_from_total(w, md);
    check_flags(ck, f, r.at("flags"));
    const bool dlt = r.at("flags").at("dlt").get<bool>();
    ck.claim(dlt ? f.dlt : (!f.dlt || r.at("dlt_conservative").get<bool>()), "dlt flag");
    ck.claim(r.at("numerically_lc").get<bool>() == f.lc, "numerically-lc differs from lc");
    Flags reported = f;
    reported.dlt = dlt;
    ck.claim(r.at("primary").get<std::string>() == strongest(reported), "primary class");
  } else if (command == "discrepancies") {
    const auto md = ck.document_model(w, r.at("model"));
    for (const auto& row : r.at("discrepancies")) {
      const std::size_t c = w.at(row.at("curve"));
      ck.claim(md.contracted[c] && rat(row.at("e")) == md.total[c] &&
                   rat(row.at("discrepancy")) == -md.total[c] &&
                   rat(row.at("log_discrepancy")) == 1 - md.total[c],
               "discrepancy of '" + w.ids[c] + "'");
    }
  } else if (command == "multiplier") {
    const auto md = ck.document_model(w, r.at("model"));
    const Vec got = w.dense(r.at("multiplier_divisor"));
    for (std::size_t i = 0; i < w.n(); ++i) {
      ck.claim(got[i] == Q(ceil_of(-md.total[i])), "multiplier coefficient of '" + w.ids[i] + "'");
    }
  } else if (command == "rays") {
    const auto md = ck.document_model(w, r.at("model"));
    const auto cd = ck.cone(w, md, r.at("cone"));
    for (const auto& ray : r.at("rays")) ck.negative_ray(w, cd, ray);
  } else if (command == "mmp") {
    const auto& steps = r.at("steps");
    const auto& seq = r.at("rho_sequence");
    ck.claim(seq.size() == steps.size() + 1, "rho sequence length");
    std::vector<bool> expected = w.contracted;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& st = steps[i];
      const auto md = ck.model(w, st.at("model"));
      ck.claim(md.contracted == expected, "step " + std::to_string(i + 1) + " starts from the wrong model");
      ck.claim(w.dense(st.at("model").at("boundary")) == w.boundary, "boundary changed during the run");
      const auto cd = ck.cone(w, md, st.at("cone"));
      const std::size_t c = w.at(st.at("curve"));
      ck.negative_ray(w, cd, st);
      ck.claim(rat(st.at("self_int")) < 0, "contracted curve has C^2 >= 0");
      const auto rb = st.at("rho_before").get<std::size_t>();
      const auto ra = st.at("rho_after").get<std::size_t>();
      ck.claim(rb == cd.rho && ra + 1 == rb, "rho does not drop by one");
      ck.claim(seq[i].get<std::size_t>() == rb && seq[i + 1].get<std::size_t>() == ra,
               "rho sequence disagrees with step " + std::to_string(i + 1));
      expected[c] = true;
    }
    const auto& fin = r.at("final");
    const auto md = ck.model(w, fin.at("model"));
    ck.claim(md.contracted == expected, "final model is not the last step's output");
    const auto cd = ck.cone(w, md, fin.at("cone"));
    const auto& e = r.at("endpoint");
    const auto rho = e.at("rho").get<std::size_t>();
    ck.claim(rho == cd.rho && rho == seq.back().get<std::size_t>(), "endpoint rho");
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "minimal-model") {
      for (const auto& [c, data] : cd.classes) {
        ck.claim(data.log_canonical_degree >= 0, "minimal model is not nef on '" + w.ids[c] + "'");
      }
    } else {
      ck.claim(kind == "mori-fiber-space", "unknown endpoint kind");
      const std::size_t c = w.at(e.at("witness"));
      ck.separator(w, cd, c, e.at("witness_separator"));
      const auto it = cd.classes.find(c);
      if (it != cd.classes.end()) {
        ck.claim(rat(e.at("witness_log_canonical_degree")) == it->second.log_canonical_degree &&
                     it->second.log_canonical_degree < 0,
                 "witness is not (K+D)-negative");
        ck.claim(rat(e.at("witness_self_int")) == it->second.self_int && it->second.self_int >= 0,
                 "witness has negative self-intersection");
      }
      ck.claim(e.at("base_rho").get<std::size_t>() + 1 == rho, "base rho is not rho - 1");
    }
  } else if (command == "dlt-blowup") {
    const auto in = ck.document_model(w, r.at("input_model"));
    const Ambient y = read_document(r.at("resolution"));
    ck.claim(y.m == w.m && y.kappa == w.kappa, "resolution lives on a different ambient surface");
    const auto md = ck.model(y, r.at("resolution_model"));
    ck.claim(md.contracted == y.contracted, "resolution certificate contracts the wrong set");
    const Vec delta1 = w.dense(r.at("truncated_boundary"));
    Vec theta = delta1;
    for (std::size_t i = 0; i < w.n(); ++i) {
      ck.claim(delta1[i] == std::min(w.boundary[i], Q(1)), "truncated boundary on '" + w.ids[i] + "'");
      ck.claim(!md.contracted[i] || in.contracted[i], "resolution contracts a non-exceptional curve");
      if (in.contracted[i] && !md.contracted[i]) theta[i] = 1;
    }
    ck.claim(theta == y.boundary, "resolution boundary is not the truncation plus the exceptional curves");
    const Vec ep = w.dense(r.at("e_prime"));
    const Vec ep_crepant = w.dense(r.at("e_prime_from_crepant"));
    const Vec diff = [&] {
      Vec d(w.n());
      for (std::size_t i = 0; i < w.n(); ++i) d[i] = in.total[i] - md.total[i];
      return d;
    }();
    bool effective = true;
    for (std::size_t i = 0; i < w.n(); ++i) {
      const bool on = in.contracted[i] && !md.contracted[i];
      ck.claim(ep[i] == (on ? diff[i] : Q(0)), "E' on '" + w.ids[i] + "'");
      ck.claim(ep_crepant[i] == (on ? in.total[i] - 1 : Q(0)), "E' from crepant on '" + w.ids[i] + "'");
      ck.claim(in.contracted[i] || diff[i] == w.boundary[i] - delta1[i],
               "log pullbacks differ by more than D - D1 on '" + w.ids[i] + "'");
      effective = effective && ep[i] >= 0;
    }
    ck.claim(r.at("e_prime_effective").get<bool>() == effective, "E' effectivity");
    const Flags fy = flags_from_total(y, md);
    ck.claim(r.at("classification").at("dlt").get<bool>() == fy.dlt, "dlt flag of the resolution");
    bool nef = true;
    for (std::size_t i = 0; i < w.n(); ++i) {
      if (in.contracted[i] && !md.contracted[i]) {
        nef = nef && y.kappa[i] + y.with_curve(md.total, i) >= 0;
      }
    }
    ck.claim(r.at("relatively_nef").get<bool>() == nef, "relative nefness of K_Y + D_Y");
    // B = pullback of E' to W: E' on the curves Y keeps, orthogonal to the
    // curves Y contracts, nothing elsewhere.
    const Vec b = w.dense(r.at("e_prime_pullback"));
    for (std::size_t i = 0; i < w.n(); ++i) {
      if (md.contracted[i]) {
        ck.claim(w.with_curve(b, i) == 0, "pullback of E' is not orthogonal to '" + w.ids[i] + "'");
      } else {
        ck.claim(b[i] == ep[i], "pullback of E' on '" + w.ids[i] + "'");
      }
    }
    const auto& neg = r.at("negativity");
    std::size_t k = 0;
    bool degrees_nonnegative = true;
    for (std::size_t i = 0; i < w.n(); ++i) {
      if (!in.contracted[i]) continue;
      const Q deg = -w.with_curve(b, i);
      ck.claim(k < neg.at("minus_b_degrees").size() && rat(neg.at("minus_b_degrees")[k]) == deg,
               "-B.E on '" + w.ids[i] + "'");
      degrees_nonnegative = degrees_nonnegative && deg >= 0;
      ++k;
    }
    const bool forced = neg.at("verdict").get<std::string>() == "effective-forced";
    ck.claim(!forced || degrees_nonnegative, "negativity verdict without -B nef");
    bool ep_zero = std::all_of(ep.begin(), ep.end(), [](const Q& x) { return x == 0; });
    const bool numerically_lc = delta1 == w.boundary && ep_zero;
    const Flags fin = flags_from_total(w, in);
    ck.claim(r.at("numerically_lc").get<bool>() == numerically_lc, "numerically-lc");
    ck.claim(numerically_lc == fin.lc, "numerically-lc differs from lc of the input");
    ck.claim(r.at("certified").get<bool>() ==
                 (fy.dlt && nef && effective && forced && ep == ep_crepant),
             "certification summary");
    const auto& seq = r.at("trace").at("rho_sequence");
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      ck.claim(seq[i].get<std::size_t>() == seq[i + 1].get<std::size_t>() + 1, "rho sequence step");
    }
  } else if (command == "diff") {
    const auto md = ck.document_model(w, r.at("model"));
    check_diff(ck, w, md, w.at(r.at("curve")), r.at("diff"), &r.at("degree"));
  } else if (command == "ioa") {
    const auto md = ck.document_model(w, r.at("model"));
    check_diff(ck, w, md, w.at(r.at("curve")), r.at("diff"), nullptr);
    bool lc = true, klt = true;
    for (const auto& t : r.at("diff")) {
      lc = lc && rat(t.at("coefficient")) <= 1;
      klt = klt && rat(t.at("coefficient")) < 1;
    }
    ck.claim(r.at("diff_lc").get<bool>() == lc && r.at("diff_klt").get<bool>() == klt,
             "Diff lc/klt flags");
    ck.claim(r.at("lc_near_curve").get<bool>() == lc, "lc near the curve disagrees with Diff");
    ck.claim(r.at("plt_near_curve").get<bool>() == klt, "plt near the curve disagrees with Diff");
  } else if (command == "nklt") {
    const auto md = ck.document_model(w, r.at("model"));
    std::vector<std::string> curves, points;
    for (std::size_t i = 0; i < w.n(); ++i)
      if (md.total[i] >= 1) curves.push_back(w.ids[i]);
    for (const auto& p : w.points)
      if (md.total[p.a] >= 1 && md.total[p.b] >= 1) points.push_back(p.id);
    ck.claim(r.at("curves").get<std::vector<std::string>>() == curves, "Nklt curves");
    ck.claim(r.at("points").get<std::vector<std::string>>() == points, "Nklt points");
  } else if (command == "connectedness") {
    const auto md = ck.document_model(w, r.at("model"));
    bool nef = true;
    for (const auto& [id, x] : r.at("anti_log_canonical_degrees").items()) {
      const std::size_t c = w.index.at(id);
      const Q deg = -(w.kappa[c] + w.with_curve(md.total, c));
      ck.claim(!md.contracted[c] && rat(x) == deg, "-(K+D)." + id);
      nef = nef && deg >= 0;
    }
    ck.claim(r.at("anti_log_canonical_nef").get<bool>() == nef, "nefness of -(K+D)");
    const bool met = nef && r.at("anti_log_canonical_big").get<bool>();
    for (const auto& f : r.at("fibers")) {
      const std::string v = f.at("verdict").get<std::string>();
      const auto pieces = f.at("piece_count").get<std::size_t>();
      const auto comps = f.at("component_count").get<std::size_t>();
      std::string expected = "hypotheses-not-met";
      if (met) {
        expected = pieces == 0 ? "empty" : comps == 1 ? "connected" : "VIOLATION";
      }
      ck.claim(v == expected, "verdict over " + f.at("base_point").get<std::string>());
      ck.claim(v != "VIOLATION", "connectedness fails over " + f.at("base_point").get<std::string>());
    }
  } else if (command == "blowup") {
    const auto in = ck.document_model(w, r.at("input_model"));
    const Ambient y = read_document(r.at("document"));
    const auto md = ck.model(y, r.at("model"));
    ck.claim(md.contracted == y.contracted, "blown-up certificate contracts the wrong set");
    const std::size_t e = y.index.at(r.at("new_curve").get<std::string>());
    ck.claim(e == w.n() && y.n() == w.n() + 1, "new curve is not appended");
    const auto pid = request.at("point").get<std::string>();
    const auto p = std::find_if(w.points.begin(), w.points.end(),
                                [&](const Point& q) { return q.id == pid; });
    ck.claim(p != w.points.end(), "unknown blown-up point");
    if (p == w.points.end() || e != w.n()) return;
    const Q bi = in.total[p->a];
    const Q bj = in.total[p->b];
    ck.claim(rat(r.at("recursion").at("b_i")) == bi && rat(r.at("recursion").at("b_j")) == bj,
             "coefficients at the blown-up point");
    ck.claim(md.total[e] == bi + bj - 1 && rat(r.at("recursion").at("e_new")) == md.total[e],
             "blowup recursion");
    for (std::size_t i = 0; i < w.n(); ++i) {
      ck.claim(md.total[i] == in.total[i], "log pullback changed on '" + w.ids[i] + "'");
    }
  } else {
    ck.claim(false, "unknown command '" + command + "'");
  }
}

}  // namespace

CheckResult check_report(const Json& report) {
  CheckResult out;
  Checker ck(out);
  try {
    const std::string status = report.at("status").get<std::string>();
    const int code = report.at("exit_code").get<int>();
    if (status == "error" || !report.contains("result")) {
      ck.claim(report.contains("error") && (code == 2 || code == 3), "error report without error");
      return out;
    }
    ck.claim((status == "ok") == (code == 0), "status and exit code disagree");
    check_result(ck, report);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace surfmmp::cli
