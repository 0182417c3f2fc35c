#include "effres/reduction.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "effres/dynamic_index.hpp"
#include "effres/eff_res.hpp"
#include "effres/error.hpp"

namespace effres {

std::string to_string(ReductionMode mode) {
  return mode == ReductionMode::Separable ? "separable" : "general";
}

ReductionMode parse_mode(const std::string& name) {
  if (name == "separable") return ReductionMode::Separable;
  if (name == "general") return ReductionMode::General;
  throw Error(ErrorCode::InvalidArgument, "unknown reduction mode '" + name + "'");
}

bool UmvInstance::answer() const {
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n0; ++j) {
      if (u[i] && m[i * n0 + j] && v[j]) return true;
    }
  }
  return false;
}

std::uint64_t UmvInstance::count(std::size_t n0) {
  const std::size_t bits = n0 * n0 + 2 * n0;
  if (bits >= 64) throw Error(ErrorCode::InvalidArgument, "instance space too large to enumerate");
  return std::uint64_t{1} << bits;
}

UmvInstance UmvInstance::from_index(std::size_t n0, std::uint64_t index) {
  UmvInstance x;
  x.n0 = n0;
  auto take = [&] {
    const auto bit = static_cast<std::uint8_t>(index & 1U);
    index >>= 1;
    return bit;
  };
  for (std::size_t k = 0; k < n0 * n0; ++k) x.m.push_back(take());
  for (std::size_t k = 0; k < n0; ++k) x.u.push_back(take());
  for (std::size_t k = 0; k < n0; ++k) x.v.push_back(take());
  return x;
}

std::string UmvInstance::to_string() const {
  std::string s = "M=";
  for (std::size_t i = 0; i < n0; ++i) {
    if (i) s += '/';
    for (std::size_t j = 0; j < n0; ++j) s += m[i * n0 + j] ? '1' : '0';
  }
  s += " u=";
  for (auto b : u) s += b ? '1' : '0';
  s += " v=";
  for (auto b : v) s += b ? '1' : '0';
  return s;
}

namespace {

mpz_class power(const mpz_class& base, unsigned long exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

mpq_class inverse_power(const mpz_class& kappa, unsigned long exp) { return mpq_class(1, power(kappa, exp)); }

std::size_t bits(const mpz_class& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

}  // namespace

ReductionInstance build_gadget(ReductionMode mode, const UmvInstance& umv) {
  const std::size_t n0 = umv.n0;
  if (n0 == 0 || umv.m.size() != n0 * n0 || umv.u.size() != n0 || umv.v.size() != n0) {
    throw Error(ErrorCode::InvalidArgument, "malformed uMv instance");
  }
  ReductionInstance inst;
  inst.mode = mode;
  inst.umv = umv;
  const bool separable = mode == ReductionMode::Separable;
  inst.n = separable ? n0 * n0 + 2 * n0 + 2 : 2 * n0 + 2;
  inst.kappa = separable ? 3 * power(mpz_class(inst.n - 1), 6) : 3 * power(mpz_class(inst.n - 1), 5);

  // ids of the row/column vertices that t may attach to
  std::vector<Vertex> row(n0), col(n0);
  std::vector<std::size_t> degree;
  auto add_vertex = [&](std::string name) {
    inst.names.push_back(std::move(name));
    degree.push_back(0);
    return static_cast<Vertex>(inst.names.size() - 1);
  };
  auto link = [&](Vertex a, Vertex b) {
    inst.initial.push_back({a, b, mpq_class(1)});
    ++degree[a];
    ++degree[b];
  };
  std::vector<Vertex> core;  // vertices whose s-edge exists from the start
  if (separable) {
    std::vector<Vertex> a(n0 * n0), b(n0 * n0);
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n0; ++j) a[i * n0 + j] = add_vertex("a" + std::to_string(i + 1) + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n0; ++j) b[i * n0 + j] = add_vertex("b" + std::to_string(i + 1) + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < n0; ++i) row[i] = add_vertex("u" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n0; ++j) col[j] = add_vertex("v" + std::to_string(j + 1));
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n0; ++j) {
        if (umv.m[i * n0 + j]) link(a[i * n0 + j], b[i * n0 + j]);
      }
    }
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t k = 0; k < n0; ++k) link(row[i], a[i * n0 + k]);
    }
    for (std::size_t j = 0; j < n0; ++j) {
      for (std::size_t k = 0; k < n0; ++k) link(col[j], b[k * n0 + j]);
    }
    core.insert(core.end(), a.begin(), a.end());
    core.insert(core.end(), b.begin(), b.end());
  } else {
    for (std::size_t i = 0; i < n0; ++i) row[i] = add_vertex("r" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n0; ++j) col[j] = add_vertex("c" + std::to_string(j + 1));
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n0; ++j) {
        if (umv.m[i * n0 + j]) link(row[i], col[j]);
      }
    }
  }
  inst.t = add_vertex("t");
  inst.s = add_vertex("s");
  inst.vertex_count = inst.names.size();
  inst.counter.assign(inst.vertex_count, 0);

  auto weight = [&](const mpz_class& w, Vertex x) {
    if (sgn(w) <= 0) {
      throw Error(ErrorCode::WeightUnderflow, "non-positive weight on the s-edge of " + inst.names[x]);
    }
    return mpq_class(w);
  };
  for (Vertex x : core) inst.initial.push_back({inst.s, x, weight(inst.kappa - degree[x], x)});

  for (std::size_t i = 0; i < n0; ++i) {
    if (umv.u[i]) {
      inst.script.push_back({true, {inst.t, row[i], mpq_class(1)}});
      ++inst.y;
      ++inst.counter[row[i]];
    }
  }
  for (std::size_t j = 0; j < n0; ++j) {
    if (umv.v[j]) {
      inst.script.push_back({true, {inst.t, col[j], mpq_class(1)}});
      ++inst.y;
      ++inst.counter[col[j]];
    }
  }
  inst.script.push_back({true, {inst.s, inst.t, weight(inst.kappa - inst.y, inst.t)}});
  for (auto* side : {&row, &col}) {
    for (Vertex x : *side) {
      inst.script.push_back({true, {inst.s, x, weight(inst.kappa - inst.counter[x] - degree[x], x)}});
    }
  }
  inst.edges = apply_script(inst.initial, inst.script);
  return inst;
}

std::vector<std::uint8_t> ReductionInstance::h_adjacency() const {
  const std::size_t k = h_order();
  std::vector<std::uint8_t> adj(k * k, 0);
  for (const RationalEdge& e : edges) {
    if (e.u == s || e.v == s) continue;
    adj[e.u * k + e.v] = 1;
    adj[e.v * k + e.u] = 1;
  }
  return adj;
}

WeightedGraph ReductionInstance::to_weighted_graph() const {
  WeightedGraph g(vertex_count);
  for (const RationalEdge& e : edges) g.add_edge(e.u, e.v, e.w.get_d());
  return g;
}

DecrementalScript decremental_script(const ReductionInstance& inst) {
  const std::size_t n0 = inst.umv.n0;
  const bool separable = inst.mode == ReductionMode::Separable;
  // row/column vertices in layout order, and their degrees in the M-graph
  const Vertex first = separable ? static_cast<Vertex>(2 * n0 * n0) : 0;
  std::vector<std::size_t> degree(inst.vertex_count, 0);
  for (const RationalEdge& e : inst.initial) {
    if (e.u == inst.s || e.v == inst.s) continue;
    ++degree[e.u];
    ++degree[e.v];
  }
  DecrementalScript out;
  out.initial = inst.initial;
  for (std::size_t k = 0; k < 2 * n0; ++k) {
    const Vertex x = first + static_cast<Vertex>(k);
    out.initial.push_back({inst.t, x, mpq_class(1)});
  }
  out.initial.push_back({inst.s, inst.t, mpq_class(inst.kappa - 2 * n0)});
  for (std::size_t k = 0; k < 2 * n0; ++k) {
    const Vertex x = first + static_cast<Vertex>(k);
    out.initial.push_back({inst.s, x, mpq_class(inst.kappa - 1 - degree[x])});
  }
  for (std::size_t k = 0; k < 2 * n0; ++k) {
    const Vertex x = first + static_cast<Vertex>(k);
    const bool bit = k < n0 ? inst.umv.u[k] : inst.umv.v[k - n0];
    if (bit) continue;
    out.script.push_back({false, {inst.t, x, mpq_class(1)}});
    out.script.push_back({false, {inst.s, x, mpq_class(inst.kappa - 1 - degree[x])}});
    out.script.push_back({true, {inst.s, x, mpq_class(inst.kappa - degree[x])}});
  }
  if (inst.y != 2 * n0) {
    out.script.push_back({false, {inst.s, inst.t, mpq_class(inst.kappa - 2 * n0)}});
    out.script.push_back({true, {inst.s, inst.t, mpq_class(inst.kappa - inst.y)}});
  }
  return out;
}

std::vector<RationalEdge> apply_script(std::vector<RationalEdge> edges, const std::vector<ScriptOp>& script) {
  for (const ScriptOp& op : script) {
    if (op.insert) {
      edges.push_back(op.edge);
      continue;
    }
    auto it = std::find_if(edges.rbegin(), edges.rend(), [&](const RationalEdge& e) {
      return (e.u == op.edge.u && e.v == op.edge.v) || (e.u == op.edge.v && e.v == op.edge.u);
    });
    if (it == edges.rend()) throw Error(ErrorCode::NoSuchEdge, "script deletes a missing edge");
    edges.erase(std::next(it).base());
  }
  return edges;
}

std::vector<RationalEdge> canonical(std::vector<RationalEdge> edges) {
  for (RationalEdge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const RationalEdge& a, const RationalEdge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w < b.w;
  });
  return edges;
}

BdiagResult bdiag(const std::vector<std::uint8_t>& adjacency, std::size_t order, std::size_t t,
                  const mpz_class& kappa) {
  if (adjacency.size() != order * order || t >= order) throw Error(ErrorCode::InvalidArgument, "bad adjacency");
  RationalMatrix b(order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) b(i, j) = -static_cast<int>(adjacency[i * order + j]);
    b(i, i) += kappa;
  }
  BdiagResult out;
  out.value = rational_solve(b, t);
  std::vector<mpz_class> walk(order, 0), next(order);
  walk[t] = 1;
  for (std::size_t i = 0; i < out.walks.size(); ++i) {
    out.walks[i] = walk[t];
    for (std::size_t r = 0; r < order; ++r) {
      next[r] = 0;
      for (std::size_t c = 0; c < order; ++c) {
        if (adjacency[r * order + c]) next[r] += walk[c];
      }
    }
    std::swap(walk, next);
  }
  return out;
}

mpq_class threshold(ReductionMode mode, std::size_t y, const mpz_class& kappa, std::size_t n0) {
  const mpq_class yq(static_cast<unsigned long>(y));
  if (mode == ReductionMode::General) {
    return inverse_power(kappa, 1) + yq * inverse_power(kappa, 3) + inverse_power(kappa, 4);
  }
  // closed 4-walks at t: t-w-x-w-t gives Y * n0, t-w-t-w'-t gives Y * Y
  const mpq_class fourth = yq * mpq_class(static_cast<unsigned long>(n0 + y));
  return inverse_power(kappa, 1) + yq * inverse_power(kappa, 3) + fourth * inverse_power(kappa, 5) +
         inverse_power(kappa, 6);
}

bool classify(ReductionMode mode, const mpq_class& lambda, std::size_t y, const mpz_class& kappa, std::size_t n0) {
  // kappa B^{-1} = sum (A / kappa)^i: every term is non-negative, so a closed
  // odd walk through t raises lambda
  return lambda >= threshold(mode, y, kappa, n0);
}

mpq_class alternating_sign_threshold(ReductionMode mode, std::size_t y, const mpz_class& kappa, std::size_t n0) {
  const mpq_class yq(static_cast<unsigned long>(y));
  if (mode == ReductionMode::General) {
    return inverse_power(kappa, 1) + yq * inverse_power(kappa, 3) - inverse_power(kappa, 4);
  }
  return inverse_power(kappa, 1) + yq * inverse_power(kappa, 3) +
         yq * mpq_class(static_cast<unsigned long>(n0 + 1)) * inverse_power(kappa, 5) - inverse_power(kappa, 6);
}

bool alternating_sign_classify(ReductionMode mode, const mpq_class& lambda, std::size_t y, const mpz_class& kappa,
                            std::size_t n0) {
  return lambda <= alternating_sign_threshold(mode, y, kappa, n0);
}

bool detect_structure(const std::vector<std::uint8_t>& adjacency, std::size_t order, std::size_t t,
                      ReductionMode mode) {
  auto adj = [&](std::size_t a, std::size_t b) { return adjacency[a * order + b] != 0; };
  if (mode == ReductionMode::General) {
    for (std::size_t x = 0; x < order; ++x) {
      if (x == t || !adj(t, x)) continue;
      for (std::size_t y = x + 1; y < order; ++y) {
        if (y != t && adj(t, y) && adj(x, y)) return true;
      }
    }
    return false;
  }
  // simple cycle t-x1-x2-x3-x4-t
  std::vector<std::size_t> path{t};
  auto on_path = [&](std::size_t x) { return std::find(path.begin(), path.end(), x) != path.end(); };
  auto extend = [&](auto&& self) -> bool {
    const std::size_t last = path.back();
    if (path.size() == 5) return adj(last, t);
    for (std::size_t x = 0; x < order; ++x) {
      if (!adj(last, x) || on_path(x)) continue;
      path.push_back(x);
      if (self(self)) return true;
      path.pop_back();
    }
    return false;
  };
  return extend(extend);
}

mpq_class rational_effective_resistance(std::size_t n, const std::vector<RationalEdge>& edges, Vertex s, Vertex t) {
  if (s >= n || t >= n) throw Error(ErrorCode::UnknownVertex, "vertex out of range");
  if (s == t) throw Error(ErrorCode::SameVertex, "s and t coincide");
  auto index = [&](Vertex x) { return static_cast<std::size_t>(x < t ? x : x - 1); };
  RationalMatrix lap(n - 1);
  for (const RationalEdge& e : edges) {
    if (e.u != t) lap(index(e.u), index(e.u)) += e.w;
    if (e.v != t) lap(index(e.v), index(e.v)) += e.w;
    if (e.u != t && e.v != t) {
      lap(index(e.u), index(e.v)) -= e.w;
      lap(index(e.v), index(e.u)) -= e.w;
    }
  }
  try {
    return rational_solve(lap, index(s));
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Singular) throw Error(ErrorCode::Disconnected, "s and t are disconnected");
    throw;
  }
}

ReductionReport verify_reduction(const ReductionInstance& inst, const VerifyOptions& options) {
  ReductionReport r;
  const std::size_t n0 = inst.umv.n0;
  const bool separable = inst.mode == ReductionMode::Separable;
  const auto adjacency = inst.h_adjacency();
  r.umv = inst.umv.answer();
  r.detect = detect_structure(adjacency, inst.h_order(), inst.t, inst.mode);

  std::vector<RationalEdge> edges = inst.edges;
  if (options.plant_fault) {
    auto it = std::find_if(edges.begin(), edges.end(), [&](const RationalEdge& e) { return e.u == inst.s || e.v == inst.s; });
    it->w += inverse_power(inst.kappa, 7);
  }
  r.lambda = rational_effective_resistance(inst.vertex_count, edges, inst.s, inst.t);
  const BdiagResult b = bdiag(adjacency, inst.h_order(), inst.t, inst.kappa);
  r.b_inverse = b.value;
  r.identity_ok = r.lambda == b.value;
  r.classified = classify(inst.mode, r.lambda, inst.y, inst.kappa, n0);
  r.classify_ok = r.classified == r.umv;
  r.detect_ok = r.detect == r.umv;

  // kappa * (B^{-1})_tt against its Neumann polynomial
  const unsigned long terms = separable ? 6 : 4;
  mpq_class partial = 0;
  for (unsigned long i = 0; i < terms; ++i) partial += mpq_class(b.walks[i]) * inverse_power(inst.kappa, i);
  const mpq_class tail = abs(mpq_class(inst.kappa) * b.value - partial);
  r.tail_ok = tail <= mpq_class(9, 10) * inverse_power(inst.kappa, terms - 1);

  const mpq_class slack = inverse_power(inst.kappa, separable ? 6 : 4);
  r.slack_ok = true;
  for (const mpq_class& factor : {mpq_class(1 + slack), mpq_class(1 - slack)}) {
    if (classify(inst.mode, r.lambda * factor, inst.y, inst.kappa, n0) != r.umv) r.slack_ok = false;
  }
  r.num_bits = bits(r.lambda.get_num());
  r.den_bits = bits(r.lambda.get_den());
  if (!r.pass()) {
    std::ostringstream os;
    os << to_string(inst.mode) << " n0=" << n0 << ' ' << inst.umv.to_string() << " uMv=" << r.umv
       << " detect=" << r.detect << " classify=" << r.classified << " lambda=" << to_decimal(r.lambda, 40)
       << " binv=" << to_decimal(b.value, 40) << " identity=" << r.identity_ok << " tail=" << r.tail_ok
       << " slack=" << r.slack_ok;
    r.counterexample = os.str();
  }
  return r;
}

ReplayReport replay_as_updates(const ReductionInstance& inst, double epsilon, std::uint64_t seed, bool decremental) {
  std::vector<RationalEdge> initial = inst.initial;
  std::vector<ScriptOp> script = inst.script;
  if (decremental) {
    DecrementalScript d = decremental_script(inst);
    initial = std::move(d.initial);
    script = std::move(d.script);
  }
  WeightedGraph g(inst.vertex_count);
  for (const RationalEdge& e : initial) g.add_edge(e.u, e.v, e.w.get_d());

  QueryParams q{epsilon};
  IndexParams params = index_params_for(q);
  params.seed = seed;
  DynamicIndex index(g, {}, params);
  for (const ScriptOp& op : script) {
    if (op.insert) {
      index.insert(op.edge.u, op.edge.v, op.edge.w.get_d());
    } else {
      index.erase(op.edge.u, op.edge.v);
    }
  }
  ReplayReport r;
  r.operations = script.size() + 1;
  r.psi = query(index, inst.s, inst.t);
  r.lambda = rational_effective_resistance(inst.vertex_count, inst.edges, inst.s, inst.t).get_d();
  r.within = r.psi >= (1.0 - epsilon) * r.lambda && r.psi <= (1.0 + epsilon) * r.lambda;
  return r;
}

}  // namespace effres
