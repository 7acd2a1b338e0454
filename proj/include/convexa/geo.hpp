#pragma once

#include <optional>

#include "convexa/atlas.hpp"
#include "convexa/hull.hpp"

namespace convexa {

// A path point; `sheet` is the chart the point was produced in. Model spaces
// ignore it, the etale-lift geometry uses it to keep distinct fibers apart.
struct PathPoint {
  Point y;
  int sheet = -1;
};

// Geometry provider for the path engine: a space seen through its chart
// cover. ModelGeo wraps a SpaceModel + Atlas; the factorization layer wraps
// lifted structures behind the same interface.
class GeoSpace {
 public:
  virtual ~GeoSpace() = default;
  virtual const SpaceModel& model() const = 0;
  virtual int chart_count() const = 0;
  virtual bool chart_contains(int chart, const PathPoint& p) const = 0;
  virtual std::vector<int> charts_containing(const PathPoint& p) const = 0;
  virtual std::vector<int> nerve_neighbors(int chart) const = 0;
  virtual PathPoint overlap_representative(int c1, int c2) const = 0;
  // Segment between two points of one chart, computed inside it.
  virtual Segment chart_segment(int chart, const PathPoint& a,
                                const PathPoint& b) const = 0;
  // Chart n chart n C(a,b), as a region in model coordinates, for slides.
  virtual Region overlap_region(int c1, int c2) const = 0;
  // Same lifted point? Model spaces compare coordinates only.
  virtual bool same_point(const PathPoint& a, const PathPoint& b) const;
  // Largest point of legB (by legB's order) that also lies on legA, with its
  // arc position along legB. Nullopt when the legs are disjoint.
  virtual std::optional<std::pair<Rat, Point>> leg_meet_last(
      const Segment& leg_a, int chart_a, const Segment& leg_b,
      int chart_b) const;
};

class ModelGeo : public GeoSpace {
 public:
  ModelGeo(const SpaceModel& space, const Atlas& atlas)
      : space_(space), atlas_(atlas) {}
  const SpaceModel& model() const override { return space_; }
  const Atlas& atlas() const { return atlas_; }
  int chart_count() const override { return (int)atlas_.charts.size(); }
  bool chart_contains(int chart, const PathPoint& p) const override {
    return region_contains(space_, atlas_.charts[chart].region, p.y);
  }
  std::vector<int> charts_containing(const PathPoint& p) const override {
    return atlas_charts_containing(space_, atlas_, p.y);
  }
  std::vector<int> nerve_neighbors(int chart) const override;
  PathPoint overlap_representative(int c1, int c2) const override;
  Segment chart_segment(int chart, const PathPoint& a,
                        const PathPoint& b) const override;
  Region overlap_region(int c1, int c2) const override {
    return chart_overlap(space_, atlas_.charts[c1], atlas_.charts[c2]);
  }

 private:
  const SpaceModel& space_;
  const Atlas& atlas_;
};

// Shared exact meet computation on raw model segments (no sheets).
std::optional<std::pair<Rat, Point>> model_leg_meet_last(const SpaceModel& space,
                                                         const Segment& leg_a,
                                                         const Segment& leg_b);

}  // namespace convexa
