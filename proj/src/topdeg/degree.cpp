#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "ntacert/topdeg.hpp"

namespace ntacert::topdeg {

using ia::Interval;

const char* status_name(Status s) {
  switch (s) {
    case Status::Degree: return "degree";
    case Status::BoundaryZeroUnverified: return "boundary-zero-unverified";
    case Status::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

namespace {

// Components are linear combinations of the base functions; the rows start
// as unit vectors and change only under the rotation retry.
using Rows = std::vector<std::vector<double>>;
using Box = std::vector<Interval>;

struct Label {
  std::size_t comp = 0;
  int sign = 0;
  friend bool operator==(const Label& a, const Label& b) { return a.comp == b.comp && a.sign == b.sign; }
};

struct Node {
  Box box;
  int child[2] = {-1, -1};
  std::optional<Label> label;    // leaves
  std::optional<Label> uniform;  // all leaves below share this label
};

struct Face {
  std::size_t pos;  // position of the collapsed axis in the free list
  int side;         // -1 lo, +1 hi
  std::vector<std::size_t> free;
  std::vector<Node> tree;
};

enum class Fail { None, Boundary, Budget };

std::vector<Rows> rotations(std::size_t k) {
  // Products of plane rotations over consecutive axis pairs.
  std::vector<Rows> out;
  for (double theta : {0.4636476090008061, 0.7853981633974483 * 0.61, 1.1071487177940904}) {
    Rows m(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = 1.0;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      const double c = std::cos(theta + 0.17 * p), s = std::sin(theta + 0.17 * p);
      for (std::size_t i = 0; i < k; ++i) {
        const double a = m[i][p], b = m[i][p + 1];
        m[i][p] = c * a - s * b;
        m[i][p + 1] = s * a + c * b;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

double determinant(Rows a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

class Solver {
 public:
  Solver(const std::vector<Term>& f, const ia::NamedBox& box, std::size_t budget) : budget_(budget) {
    for (const auto& t : f) tapes_.emplace_back(t, box.names());
  }

  std::size_t used() const { return used_; }

  DegreeResult run(const ia::NamedBox& box) {
    Box b = box.intervals();
    std::vector<std::size_t> free(b.size());
    Rows rows(tapes_.size(), std::vector<double>(tapes_.size(), 0.0));
    for (std::size_t i = 0; i < free.size(); ++i) {
      free[i] = i;
      rows[i][i] = 1.0;
    }
    Fail fail = Fail::None;
    const int d = recurse(b, free, rows, fail);
    DegreeResult r;
    r.subfaces = used_;
    if (fail == Fail::Budget) r.status = Status::BudgetExceeded;
    else if (fail == Fail::Boundary) r.status = Status::BoundaryZeroUnverified;
    else {
      r.status = Status::Degree;
      r.degree = d;
    }
    return r;
  }

  Status boundary_only(const ia::NamedBox& box) {
    Box b = box.intervals();
    std::vector<std::size_t> free(b.size());
    Rows rows(tapes_.size(), std::vector<double>(tapes_.size(), 0.0));
    for (std::size_t i = 0; i < free.size(); ++i) {
      free[i] = i;
      rows[i][i] = 1.0;
    }
    if (!consume()) return Status::BudgetExceeded;
    std::vector<Face> faces;
    switch (cover_boundary(b, free, rows, faces)) {
      case Fail::None: return Status::Degree;
      case Fail::Budget: return Status::BudgetExceeded;
      default: return Status::BoundaryZeroUnverified;
    }
  }

 private:
  bool consume() {
    if (used_ >= budget_) return false;
    ++used_;
    return true;
  }

  std::vector<Interval> components(const Box& box, const Rows& rows) const {
    std::vector<Interval> base(tapes_.size());
    for (std::size_t i = 0; i < tapes_.size(); ++i) base[i] = tapes_[i].eval(box);
    std::vector<Interval> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
      std::optional<Interval> acc;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0.0) continue;
        const Interval term = row[j] == 1.0 ? base[j] : ia::scale(row[j], base[j]);
        acc = acc ? *acc + term : term;
      }
      out.push_back(acc.value_or(Interval::point(0.0)));
    }
    return out;
  }

  static std::optional<Label> label_of(const std::vector<Interval>& v) {
    std::optional<Label> best;
    double mag = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double m = v[i].magnitude_from_zero();
      if (m > mag) {
        mag = m;
        best = Label{i, v[i].lo > 0 ? 1 : -1};
      }
    }
    return best;
  }

  // Bisects one face until every leaf carries a label.
  Fail cover(Face& face, const Rows& rows) {
    double initial = 0.0;
    for (std::size_t a : face.free) initial = std::max(initial, face.tree[0].box[a].width());
    const double floor_width = std::ldexp(initial, -44);
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const std::size_t id = stack.back();
      stack.pop_back();
      if (!consume()) return Fail::Budget;
      const Box box = face.tree[id].box;
      if (auto l = label_of(components(box, rows))) {
        face.tree[id].label = l;
        continue;
      }
      std::size_t axis = 0;
      double widest = -1.0;
      for (std::size_t a : face.free)
        if (box[a].width() > widest) {
          widest = box[a].width();
          axis = a;
        }
      if (widest <= 0.0 || widest < floor_width) return Fail::Boundary;
      const double mid = box[axis].mid();
      if (!(box[axis].lo < mid && mid < box[axis].hi)) return Fail::Boundary;
      Box left = box, right = box;
      left[axis].hi = mid;
      right[axis].lo = mid;
      face.tree[id].child[0] = static_cast<int>(face.tree.size());
      face.tree.push_back(Node{std::move(left)});
      face.tree[id].child[1] = static_cast<int>(face.tree.size());
      face.tree.push_back(Node{std::move(right)});
      stack.push_back(static_cast<std::size_t>(face.tree[id].child[1]));
      stack.push_back(static_cast<std::size_t>(face.tree[id].child[0]));
    }
    // Children are appended after their parent, so a reverse pass is bottom-up.
    for (std::size_t id = face.tree.size(); id-- > 0;) {
      Node& n = face.tree[id];
      if (n.child[0] < 0) {
        n.uniform = n.label;
        continue;
      }
      const auto& a = face.tree[static_cast<std::size_t>(n.child[0])].uniform;
      const auto& b = face.tree[static_cast<std::size_t>(n.child[1])].uniform;
      if (a && b && *a == *b) n.uniform = a;
    }
    return Fail::None;
  }

  Fail cover_boundary(const Box& box, const std::vector<std::size_t>& free, const Rows& rows,
                      std::vector<Face>& faces) {
    for (std::size_t j = 0; j < free.size(); ++j) {
      for (int side : {-1, 1}) {
        Face face{j, side, {}, {}};
        for (std::size_t a : free)
          if (a != free[j]) face.free.push_back(a);
        Box fb = box;
        fb[free[j]] = Interval::point(side < 0 ? box[free[j]].lo : box[free[j]].hi);
        face.tree.push_back(Node{std::move(fb)});
        if (Fail f = cover(face, rows); f != Fail::None) return f;
        faces.push_back(std::move(face));
      }
    }
    return Fail::None;
  }

  static void pieces(const Face& face, std::size_t id, const Label& want, std::vector<std::size_t>& out) {
    const Node& n = face.tree[id];
    if (n.uniform && *n.uniform == want) {
      out.push_back(id);
      return;
    }
    if (n.child[0] < 0) return;
    pieces(face, static_cast<std::size_t>(n.child[0]), want, out);
    pieces(face, static_cast<std::size_t>(n.child[1]), want, out);
  }

  int recurse(const Box& box, const std::vector<std::size_t>& free, const Rows& rows, Fail& fail) {
    const std::size_t k = free.size();
    if (k == 0) return 1;
    if (!consume()) {
      fail = Fail::Budget;
      return 0;
    }
    for (const auto& v : components(box, rows))
      if (!v.contains_zero()) return 0;  // no zero anywhere in the box
    const int d = level(box, free, rows, fail);
    if (fail != Fail::Boundary || k < 2) return d;
    for (const Rows& m : rotations(k)) {
      const double det = determinant(m);
      if (std::fabs(det) <= 0.5) continue;
      Rows rotated(k, std::vector<double>(rows[0].size(), 0.0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l)
          for (std::size_t c = 0; c < rows[0].size(); ++c) rotated[i][c] += m[i][l] * rows[l][c];
      fail = Fail::None;
      const int r = level(box, free, rotated, fail);
      if (fail == Fail::None) return det > 0 ? r : -r;
      if (fail == Fail::Budget) return 0;
    }
    return 0;
  }

  int level(const Box& box, const std::vector<std::size_t>& free, const Rows& rows, Fail& fail) {
    const std::size_t k = free.size();
    std::vector<Face> faces;
    if (Fail f = cover_boundary(box, free, rows, faces); f != Fail::None) {
      fail = f;
      return 0;
    }
    struct Choice {
      Label label;
      std::vector<std::vector<std::size_t>> per_face;
      std::size_t count = 0;
    };
    std::vector<Choice> choices;
    for (std::size_t i = 0; i < k; ++i) {
      for (int s : {1, -1}) {
        Choice c{Label{i, s}, {}, 0};
        for (const auto& face : faces) {
          std::vector<std::size_t> ids;
          pieces(face, 0, c.label, ids);
          c.count += ids.size();
          c.per_face.push_back(std::move(ids));
        }
        choices.push_back(std::move(c));
      }
    }
    std::stable_sort(choices.begin(), choices.end(),
                     [](const Choice& a, const Choice& b) { return a.count < b.count; });
    for (const Choice& c : choices) {
      Rows reduced;
      for (std::size_t i = 0; i < k; ++i)
        if (i != c.label.comp) reduced.push_back(rows[i]);
      const int comp_sign = c.label.sign * ((c.label.comp % 2) ? -1 : 1);
      int total = 0;
      bool ok = true;
      for (std::size_t f = 0; f < faces.size() && ok; ++f) {
        const Face& face = faces[f];
        const int orient = face.side * ((face.pos % 2) ? -1 : 1);
        for (std::size_t id : c.per_face[f]) {
          Fail sub = Fail::None;
          const int d = recurse(face.tree[id].box, face.free, reduced, sub);
          if (sub == Fail::Budget) {
            fail = Fail::Budget;
            return 0;
          }
          if (sub == Fail::Boundary) {
            ok = false;
            break;
          }
          total += comp_sign * orient * d;
        }
      }
      if (ok) {
        fail = Fail::None;
        return total;
      }
    }
    fail = Fail::Boundary;
    return 0;
  }

  std::vector<ia::Tape> tapes_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

void check_square(const std::vector<Term>& f, const ia::NamedBox& box) {
  if (f.size() != box.dim()) throw std::invalid_argument("degree: system is not square");
}

}  // namespace

DegreeResult degree(const std::vector<Term>& f, const ia::NamedBox& box, std::size_t budget) {
  check_square(f, box);
  if (f.empty()) return DegreeResult{Status::Degree, 1, 0};
  Solver s(f, box, budget);
  return s.run(box);
}

Status check_boundary(const std::vector<Term>& f, const ia::NamedBox& box, std::size_t budget) {
  check_square(f, box);
  if (f.empty()) return Status::Degree;
  Solver s(f, box, budget);
  return s.boundary_only(box);
}

bool verify_boundary_nonzero(const std::vector<Term>& f, const ia::NamedBox& box, std::size_t budget) {
  return check_boundary(f, box, budget) == Status::Degree;
}

}  // namespace ntacert::topdeg
