#include "bqec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>

namespace bqec {

void WeightedGraph::add_edge(int u, int v, double w, int tag) {
  if (u == v) throw std::invalid_argument("WeightedGraph: self-loop");
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
    throw std::invalid_argument("WeightedGraph: vertex out of range");
  }
  if (!(w >= 0.0)) throw std::invalid_argument("WeightedGraph: negative weight");
  for (auto& nb : adj_[u]) {
    if (nb.to == v) {
      if (w < nb.w) {
        nb.w = w;
        nb.tag = tag;
        for (auto& nb2 : adj_[v]) {
          if (nb2.to == u) {
            nb2.w = w;
            nb2.tag = tag;
          }
        }
      }
      return;
    }
  }
  adj_[u].push_back({v, w, tag});
  adj_[v].push_back({u, w, tag});
}

void WeightedGraph::set_boundary(int v) {
  if (boundary_.size() != adj_.size()) boundary_.assign(adj_.size(), 0);
  boundary_[v] = 1;
}

bool WeightedGraph::is_boundary(int v) const {
  return !boundary_.empty() && boundary_[v] != 0;
}

std::vector<int> ShortestPaths::path(int source_index, int v) const {
  std::vector<int> p;
  if (std::isinf(dist[source_index][v])) return p;
  for (int x = v; x != -1; x = parent[source_index][x]) p.push_back(x);
  std::reverse(p.begin(), p.end());
  return p;
}

ShortestPaths all_pairs_min_paths(const WeightedGraph& graph, const std::vector<int>& sources) {
  const int n = graph.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  ShortestPaths sp;
  sp.dist.assign(sources.size(), std::vector<double>(n, inf));
  sp.parent.assign(sources.size(), std::vector<int>(n, -1));

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (size_t i = 0; i < sources.size(); ++i) {
    auto& dist = sp.dist[i];
    auto& parent = sp.parent[i];
    dist[sources[i]] = 0.0;
    pq.push({0.0, sources[i]});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[u]) continue;
      for (const auto& nb : graph.neighbors(u)) {
        double nd = du + nb.w;
        if (nd < dist[nb.to] || (nd == dist[nb.to] && parent[nb.to] > u)) {
          dist[nb.to] = nd;
          parent[nb.to] = u;
          pq.push({nd, nb.to});
        }
      }
    }
  }
  return sp;
}

namespace {

// Dense maximum-weight matching with blossoms, O(n^3). Integer weights;
// duals are kept doubled so every adjustment stays integral.
class BlossomMatcher {
 public:
  using ll = long long;

  explicit BlossomMatcher(int n) : n_(n) {
    const int m = 2 * n + 1;
    g_.assign(m, std::vector<Edge>(m));
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v) g_[u][v] = {u, v, 0};
    lab_.assign(m, 0);
    match_.assign(m, 0);
    slack_.assign(m, 0);
    st_.assign(m, 0);
    pa_.assign(m, 0);
    s_.assign(m, -1);
    vis_.assign(m, 0);
    flower_.assign(m, {});
    flower_from_.assign(m, std::vector<int>(n + 1, 0));
  }

  void set_weight(int u, int v, ll w) {
    g_[u + 1][v + 1].w = w;
    g_[v + 1][u + 1].w = w;
  }

  // Runs the matching; returns mate[] (0-based, -1 when unmatched).
  std::vector<int> solve() {
    ll w_max = 0;
    n_x_ = n_;
    for (int u = 1; u <= n_; ++u) {
      st_[u] = u;
      flower_from_[u].assign(n_ + 1, 0);
      flower_from_[u][u] = u;
      for (int v = 1; v <= n_; ++v) w_max = std::max(w_max, g_[u][v].w);
    }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (matching()) {
    }
    std::vector<int> mate(n_, -1);
    for (int u = 1; u <= n_; ++u) {
      if (match_[u]) mate[u - 1] = match_[u] - 1;
    }
    return mate;
  }

 private:
  struct Edge {
    int u, v;
    ll w;
  };

  static constexpr ll kInf = std::numeric_limits<ll>::max() / 4;

  ll e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2; }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u) {
      if (g_[u][x].w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
    }
  }

  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
    } else {
      for (int p : flower_[x]) q_push(p);
    }
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_) {
      for (int p : flower_[x]) set_st(p, b);
    }
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                              flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = g_[u][v].v;
    if (u <= n_) return;
    Edge e = g_[u][v];
    int xr = flower_from_[u][e.u];
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
  }

  void augment(int u, int v) {
    while (true) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++t_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == t_) return u;
      vis_[u] = t_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      y = st_[match_[x]];
      flower_[b].push_back(y);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      y = st_[match_[x]];
      flower_[b].push_back(y);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) g_[b][x].w = g_[x][b].w = 0;
    for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x) {
        if (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x])) {
          g_[b][x] = g_[xs][x];
          g_[x][b] = g_[x][xs];
        }
      }
      for (int x = 1; x <= n_; ++x) {
        if (flower_from_[xs][x]) flower_from_[b][x] = xs;
      }
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int p : flower_[b]) set_st(p, p);
    int xr = flower_from_[b][g_[b][pa_[b]].u];
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower_[b][i];
      int xns = flower_[b][i + 1];
      pa_[xs] = g_[xns][xs].u;
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (size_t i = pr + 1; i < flower_[b].size(); ++i) {
      int xs = flower_[b][i];
      s_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    int u = st_[e.u], v = st_[e.v];
    if (s_[v] == -1) {
      pa_[v] = e.u;
      s_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      s_[nu] = 0;
      q_push(nu);
    } else if (s_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool matching() {
    std::fill(s_.begin(), s_.end(), -1);
    std::fill(slack_.begin(), slack_.end(), 0);
    q_.clear();
    for (int x = 1; x <= n_x_; ++x) {
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    }
    if (q_.empty()) return false;
    while (true) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop_front();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v) {
          if (g_[u][v].w > 0 && st_[u] != st_[v]) {
            if (e_delta(g_[u][v]) == 0) {
              if (on_found_edge(g_[u][v])) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
        }
      }
      ll d = kInf;
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      }
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1) {
            d = std::min(d, e_delta(g_[slack_[x]][x]));
          } else if (s_[x] == 0) {
            d = std::min(d, e_delta(g_[slack_[x]][x]) / 2);
          }
        }
      }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b) {
          if (s_[b] == 0) {
            lab_[b] += d * 2;
          } else if (s_[b] == 1) {
            lab_[b] -= d * 2;
          }
        }
      }
      q_.clear();
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && e_delta(g_[slack_[x]][x]) == 0) {
          if (on_found_edge(g_[slack_[x]][x])) return true;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
      }
    }
  }

  int n_, n_x_ = 0, t_ = 0;
  std::vector<std::vector<Edge>> g_;
  std::vector<ll> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<std::vector<int>> flower_from_;
  std::deque<int> q_;
};

}  // namespace

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<double>>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n % 2 != 0) throw std::invalid_argument("min_weight_perfect_matching: odd vertex count");
  if (n == 0) return {};
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("min_weight_perfect_matching: matrix must be square");
    }
  }

  // Minimize by maximizing (big - w) with strictly positive transformed
  // weights; on a complete graph the maximum-weight matching is then perfect.
  constexpr double kScale = static_cast<double>(1 << 20);
  long long w_int_max = 0;
  std::vector<std::vector<long long>> w_int(n, std::vector<long long>(n, 0));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double w = std::min(weights[u][v], 1e6);
      if (!(w >= 0.0)) throw std::invalid_argument("min_weight_perfect_matching: negative weight");
      w_int[u][v] = w_int[v][u] = llround(w * kScale);
      w_int_max = std::max(w_int_max, w_int[u][v]);
    }
  }
  const long long big = w_int_max + 1;

  BlossomMatcher matcher(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) matcher.set_weight(u, v, big - w_int[u][v]);
  }
  std::vector<int> mate = matcher.solve();
  for (int u = 0; u < n; ++u) {
    if (mate[u] < 0 || mate[mate[u]] != u) {
      throw std::runtime_error("min_weight_perfect_matching: matching is not perfect");
    }
  }
  return mate;
}

}  // namespace bqec
