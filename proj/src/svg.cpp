#include "plumbline/svg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "plumbline/errors.hpp"

namespace plumbline {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct Seg {
  double x1, y1, x2, y2;
};

// Axis-parallel segment with gaps cut out at the given centres (along the
// running coordinate).
void push_with_gaps(std::vector<Seg>& out, double x1, double y1, double x2, double y2,
                    std::vector<double> gaps, double radius) {
  bool horizontal = y1 == y2;
  double lo = horizontal ? std::min(x1, x2) : std::min(y1, y2);
  double hi = horizontal ? std::max(x1, x2) : std::max(y1, y2);
  std::sort(gaps.begin(), gaps.end());
  double cur = lo;
  auto push = [&](double a, double b) {
    if (b - a < 0.5) return;
    if (horizontal)
      out.push_back({a, y1, b, y1});
    else
      out.push_back({x1, a, x1, b});
  };
  for (double g : gaps) {
    push(cur, g - radius);
    cur = std::max(cur, g + radius);
  }
  push(cur, hi);
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

}  // namespace

std::string associated_link_svg(const LBTree& t) {
  ValidationReport vr = validate_lbtree(t);
  if (!vr.ok) throw InputError("associated_link_svg: invalid tree: " + vr.summary());

  // vertices along a path in DFS order
  const std::vector<int>& verts = t.tree.vertices;
  int k = static_cast<int>(verts.size());
  std::map<int, int> vidx;
  for (int i = 0; i < k; ++i) vidx[verts[i]] = i;
  std::vector<int> order;
  {
    std::vector<bool> seen(k, false);
    std::vector<int> stack{verts.front()};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (seen[vidx[v]]) continue;
      seen[vidx[v]] = true;
      order.push_back(v);
      std::vector<int> nbs;
      for (int e : t.tree.incident_edges(v)) nbs.push_back(t.tree.edges[e].other(v));
      std::sort(nbs.rbegin(), nbs.rend());
      for (int nb : nbs)
        if (!seen[vidx[nb]]) stack.push_back(nb);
    }
  }
  std::map<int, int> xpos;
  for (size_t i = 0; i < order.size(); ++i) xpos[order[i]] = static_cast<int>(i);

  // link components = classes of parts glued along the edges
  Dsu dsu(2 * k);
  auto part_node = [&](int v, int part) { return 2 * vidx.at(v) + part; };
  for (size_t e = 0; e < t.tree.edges.size(); ++e) {
    const Edge& ed = t.tree.edges[e];
    dsu.unite(part_node(ed.u, t.part_of(ed.u, static_cast<int>(e))),
              part_node(ed.v, t.part_of(ed.v, static_cast<int>(e))));
  }
  std::map<int, int> class_id;
  for (int i = 0; i < 2 * k; ++i) class_id.emplace(dsu.find(i), static_cast<int>(class_id.size()));
  int nclasses = static_cast<int>(class_id.size());
  auto cls = [&](int v, int part) { return class_id.at(dsu.find(part_node(v, part))); };

  // clasp tree on the classes, one edge per vertex; lanes by BFS depth
  std::vector<std::vector<int>> adj(nclasses);
  for (int v : verts) {
    int a = cls(v, 0), b = cls(v, 1);
    if (a == b) throw InternalError("associated_link_svg: clasp joins a class to itself");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> depth(nclasses, -1);
  {
    std::vector<int> queue{cls(order.front(), 0)};
    depth[queue[0]] = 0;
    for (size_t q = 0; q < queue.size(); ++q)
      for (int nb : adj[queue[q]])
        if (depth[nb] < 0) {
          depth[nb] = depth[queue[q]] + 1;
          queue.push_back(nb);
        }
  }

  const double dx = 64, margin = 26, bandH = 18, laneH = 50, fingerHalf = 5, gapR = 3.2;
  std::vector<double> cls_min_x(nclasses, 1e9), cls_max_x(nclasses, -1e9);
  for (int v : verts) {
    double x = margin + 18 + xpos[v] * dx;
    for (int part = 0; part < 2; ++part) {
      int c = cls(v, part);
      cls_min_x[c] = std::min(cls_min_x[c], x);
      cls_max_x[c] = std::max(cls_max_x[c], x);
    }
  }

  // pack same-depth rings into sub-lanes when their spans overlap
  std::vector<int> sublane(nclasses, 0);
  std::map<int, std::vector<int>> by_depth;
  for (int c = 0; c < nclasses; ++c) by_depth[depth[c]].push_back(c);
  int max_sub = 0;
  for (auto& [d, classes] : by_depth) {
    std::sort(classes.begin(), classes.end(),
              [&](int a, int b) { return cls_min_x[a] < cls_min_x[b]; });
    std::vector<double> lane_end;
    for (int c : classes) {
      size_t lane = 0;
      while (lane < lane_end.size() && cls_min_x[c] - 24 <= lane_end[lane]) ++lane;
      if (lane == lane_end.size()) lane_end.push_back(-1e9);
      lane_end[lane] = cls_max_x[c] + 24;
      sublane[c] = static_cast<int>(lane);
      max_sub = std::max(max_sub, static_cast<int>(lane));
    }
  }
  auto top_y = [&](int c) { return margin + depth[c] * laneH + sublane[c] * (bandH + 6); };

  // clasps: one finger per vertex from the shallower ring into the deeper
  struct Finger {
    int upper, lower;
    double x;
  };
  std::vector<Finger> fingers;
  std::vector<std::vector<double>> bottom_openings(nclasses), top_gaps(nclasses);
  for (int v : verts) {
    double x = margin + 18 + xpos[v] * dx;
    int a = cls(v, 0), b = cls(v, 1);
    int upper = depth[a] < depth[b] ? a : b;
    int lower = upper == a ? b : a;
    fingers.push_back({upper, lower, x});
    bottom_openings[upper].push_back(x);
    top_gaps[lower].push_back(x - fingerHalf);  // the left finger strand passes over
  }

  double width = margin + 36 + (order.empty() ? 0.0 : (order.size() - 1) * dx) + margin + 20;
  int max_depth = *std::max_element(depth.begin(), depth.end());
  double height = margin + max_depth * laneH + (max_sub + 1) * (bandH + 6) + bandH + 2 * margin;

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
     << "\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int c = 0; c < nclasses; ++c) {
    std::vector<Seg> segs;
    double x0 = cls_min_x[c] - 20, x1 = cls_max_x[c] + 20;
    double yt = top_y(c), yb = yt + bandH;
    push_with_gaps(segs, x0, yt, x1, yt, top_gaps[c], gapR);
    {
      std::vector<double> centres = bottom_openings[c];
      std::sort(centres.begin(), centres.end());
      double cur = x0;
      for (double g : centres) {
        if (g - fingerHalf > cur) segs.push_back({cur, yb, g - fingerHalf, yb});
        cur = g + fingerHalf;
      }
      if (x1 > cur) segs.push_back({cur, yb, x1, yb});
    }
    segs.push_back({x0, yt, x0, yb});
    segs.push_back({x1, yt, x1, yb});
    for (const Finger& f : fingers) {
      if (f.upper != c) continue;
      double y_lower_top = top_y(f.lower);
      double y_deep = y_lower_top + bandH * 0.55;
      segs.push_back({f.x - fingerHalf, yb, f.x - fingerHalf, y_deep});
      push_with_gaps(segs, f.x + fingerHalf, yb, f.x + fingerHalf, y_deep, {y_lower_top}, gapR);
      segs.push_back({f.x - fingerHalf, y_deep, f.x + fingerHalf, y_deep});
    }
    for (const Seg& s : segs)
      os << "  <line x1=\"" << s.x1 << "\" y1=\"" << s.y1 << "\" x2=\"" << s.x2 << "\" y2=\"" << s.y2
         << "\" stroke=\"" << kPalette[c % 8] << "\" stroke-width=\"2.6\" stroke-linecap=\"round\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace plumbline
