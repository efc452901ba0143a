#include "covforge/replay.hpp"

namespace covforge {

// Minimal generating system of the covariant algebra of the binary septimic,
// by construction. Level conventions: [f,g]^r is the r-th semitransvectant.
// Rows whose traditional form omits the level, or prints one incompatible
// with the recorded order, are normalized (see the notes).
const std::vector<CatalogEntry>& generator_catalog_d7() {
  static const std::vector<CatalogEntry> table = {
      {"t", "t", 1, 7, ""},

      {"dv1", "[t,t]^4", 2, 6, ""},
      {"dv2", "[t,t]^6", 2, 2, ""},
      {"dv3", "[t,t]^2", 2, 10, ""},

      {"tr1", "[t,dv1]^4", 3, 5, ""},
      {"tr2", "[t,dv3]^1", 3, 15, "level omitted; 1 recovers order 15"},
      {"tr3", "[t,dv3]^3", 3, 11, ""},
      {"tr4", "[t,dv3]^4", 3, 9, ""},
      {"tr5", "[t,dv3]^5", 3, 7, ""},
      {"tr6", "[t,dv3]^7", 3, 3, ""},

      {"ch1", "[t,tr5]^7", 4, 0, ""},
      {"ch2", "[t,tr3]^7", 4, 4, ""},
      {"ch3", "[t,tr3]^2", 4, 14, ""},
      {"ch4", "[t,tr3]^4", 4, 10, ""},
      {"ch5", "[t,tr3]^5", 4, 8, ""},
      {"ch6", "[t,tr1]^2", 4, 8, ""},
      {"ch7", "[t,tr1]^3", 4, 6, ""},
      {"ch8", "[t,tr1]^4", 4, 4, ""},

      {"pt1", "[t,ch6]^5", 5, 5, ""},
      {"pt2", "[t,ch6]^6", 5, 3, ""},
      {"pt3", "[t,ch7]^2", 5, 9, ""},
      {"pt4", "[t,ch7]^3", 5, 7, ""},
      {"pt5", "[t,ch7]^5", 5, 3, ""},
      {"pt6", "[t,ch6]^3", 5, 9, ""},
      {"pt7", "[t,ch4]^2", 5, 13, ""},
      {"pt8", "[t,ch4]^5", 5, 7, ""},
      {"pt9", "[t,dv1*dv1]^7", 5, 5, ""},
      {"pt10", "[t,dv1*dv2]^7", 5, 1, ""},

      {"sh1", "[t,pt5]^2", 6, 6,
       "traditional level 5 exceeds ord(pt5) = 3; 2 recovers order 6"},
      {"sh2", "[t,pt7]^6", 6, 8, ""},
      {"sh3", "[t,pt4]^5", 6, 4, ""},
      {"sh4", "[t,pt4]^6", 6, 2, ""},
      {"sh5", "[t,pt3]^2", 6, 12, ""},
      {"sh6", "[t,pt3]^4", 6, 8, ""},
      {"sh7", "[t,pt4]^4", 6, 6, ""},
      {"sh8", "[t,tr1*dv1]^7", 6, 4, ""},
      {"sh9", "[t,tr1*dv2]^6", 6, 2, ""},
      {"sh10", "[t,tr6*dv1]^7", 6, 2, ""},

      {"si1", "[t,sh5]^4", 7, 11, ""},
      {"si2", "[t,sh7]^4", 7, 5, ""},
      {"si3", "[t,tr1*tr1]^7", 7, 3, ""},
      {"si4", "[t,sh1]^3", 7, 7, ""},
      {"si5", "[t,ch7*dv1]^7", 7, 5, ""},
      {"si6", "[t,ch7*dv2]^7", 7, 1, ""},
      {"si7", "[t,tr6*tr6]^4", 7, 5, ""},
      {"si8", "[t,tr6*tr6]^6", 7, 1, ""},
      {"si9", "[t,tr6*tr1]^6", 7, 3, ""},
      {"si10", "[t,tr6*tr1]^7", 7, 1, ""},
      {"si11", "[t,tr1*tr1]^6", 7, 5, ""},
      {"si12", "[t,sh10]^1", 7, 7, "level omitted; 1 recovers order 7"},

      {"vi1", "[t,si7]^3", 8, 6, ""},
      {"vi2", "[t,si7]^4", 8, 4, ""},
      {"vi3", "[t,ch8*tr6]^7", 8, 0, ""},
      {"vi4", "[t,ch8*tr1]^6", 8, 4, ""},
      {"vi5", "[t,ch8*tr1]^7", 8, 2, ""},
      {"vi6", "[t,ch7*tr6]^7", 8, 2, ""},
      {"vi7", "[t,ch7*tr1]^7", 8, 4, ""},
      {"vi8", "[t,ch8*tr6]^6", 8, 2, ""},
      {"vi9", "[t,tr6*dv2*dv2]^7", 8, 0, ""},
      {"vi10", "[t,si4]^2", 8, 10, ""},
      {"vi11", "[t,si12]^4", 8, 6, ""},
      {"vi12", "[t,si11]^3", 8, 6, ""},
      {"vi13", "[t,pt9*dv2]^7", 8, 0, ""},

      {"de1", "[t,sh3*dv1]^7", 9, 3, ""},
      {"de2", "[t,ch7*ch8]^7", 9, 3, ""},
      {"de3", "[t,pt5*tr6]^5", 9, 3, ""},
      {"de4", "[t,pt5*tr1]^6", 9, 3, ""},
      {"de5", "[t,pt5*tr1]^7", 9, 1, ""},
      {"de6", "[t,sh9*dv1]^7", 9, 1, ""},
      {"de7", "[t,sh10*dv1]^7", 9, 1, ""},
      {"de8", "[t,sh10*dv2]^3", 9, 5, ""},
      {"de9", "[t,vi5]^2", 9, 5, ""},
      {"de10", "[t,vi2]^4", 9, 3, ""},
      {"de11", "[t,vi11]^2", 9, 9, ""},

      {"des1", "[t,sh9*tr1]^6", 10, 2, ""},
      {"des2", "[t,sh4*tr6]^4", 10, 4, ""},
      {"des3", "[t,sh4*tr1]^6", 10, 2, ""},
      {"des4", "[t,sh1*tr1]^7", 10, 4, ""},
      {"des5", "[t,sh3*tr6]^5", 10, 4, ""},
      {"des6", "[t,de9]^2", 10, 8, ""},
      {"des7", "[t,tr6*tr6*tr6]^7", 10, 2, ""},
      {"des8", "[t,sh10*tr1]^6", 10, 2, ""},
      {"des9", "[t,pt1*ch7]^7", 10, 4, ""},

      {"odn1", "[t,vi2*dv1]^7", 11, 3, ""},
      {"odn2", "[t,vi2*dv2]^6", 11, 1, ""},
      {"odn3", "[t,vi4*dv2]^6", 11, 1, ""},
      {"odn4", "[t,vi5*dv1]^7", 11, 1, ""},
      {"odn5", "[t,vi6*dv1]^7", 11, 1, ""},
      {"odn6", "[t,vi2*dv2]^5", 11, 3, ""},
      {"odn7", "[t,des6]^4", 11, 7, ""},
      {"odn8", "[t,des6]^6", 11, 3, ""},
      {"odn9", "[t,vi1*dv2]^7", 11, 1, ""},

      {"dvan1", "[t,sh1*pt2]^7", 12, 2, ""},
      {"dvan2", "[t,sh1*pt5]^7", 12, 2, ""},
      {"dvan3", "[sh9,sh10]^2", 12, 0, ""},
      {"dvan4", "[t,odn7]^6", 12, 2, ""},
      {"dvan5", "[t,de8*dv2]^6", 12, 2, ""},
      {"dvan6", "[sh10,sh10]^2", 12, 0, ""},
      {"dvan7", "[t,de9*dv2]^6", 12, 2, ""},
      {"dvan8", "[t,de10*dv1]^7", 12, 2, ""},
      {"dvan9", "[t,odn7]^4", 12, 6, ""},
      {"dvan10", "[sh1,sh1]^6", 12, 0,
       "traditional level 2 gives order 8; 6 recovers the recorded order 0"},
      {"dvan11", "[sh4,sh4]^2", 12, 0, ""},
      {"dvan12", "[sh4,sh9]^2", 12, 0, ""},
      {"dvan13", "[sh4,sh10]^2", 12, 0,
       "traditional operand list cannot reach order 0; this pair completes the "
       "six independent degree-12 invariants"},

      {"tryn1", "[t,dvan9]^6", 13, 1, ""},
      {"tryn2", "[t,vi1*ch7]^7", 13, 5, ""},
      {"tryn3", "[t,vi2*ch8]^7", 13, 1, ""},
      {"tryn4", "[t,vi2*ch2]^7", 13, 1, ""},
      {"tryn5", "[t,vi1*ch8]^7", 13, 3, ""},
      {"tryn6", "[t,vi5*ch2]^6", 13, 1, ""},
      {"tryn7", "[t,vi8*ch8]^6", 13, 1, ""},
      {"tryn8", "[t,vi8*ch7]^7", 13, 1, ""},
      {"tryn9", "[t,vi4*ch8]^7", 13, 1, ""},

      {"chot1", "[si8,si10]^1", 14, 0, "level omitted; 1 recovers order 0"},
      {"chot2", "[si6,si10]^1", 14, 0, "level omitted; 1 recovers order 0"},
      {"chot3", "[si6,si8]^1", 14, 0, "level omitted; 1 recovers order 0"},
      {"chot4", "[si3,si9]^3", 14, 0, ""},
      {"chot5", "[sh10,vi2]^1", 14, 4, "level omitted; 1 recovers order 4"},
      {"chot6", "[sh9,vi2]^1", 14, 4, "level omitted; 1 recovers order 4"},

      {"ptn1", "[de10,sh9]^2", 15, 1, ""},
      {"ptn2", "[de10,sh4]^2", 15, 1, ""},
      {"ptn3", "[de3,sh9]^2", 15, 1, ""},
      {"ptn4", "[de10,sh10]^1", 15, 3, "level omitted; 1 recovers order 3"},

      {"shis1", "[vi2,vi4]^4", 16, 0, ""},
      {"shis2", "[vi2,vi2]^4", 16, 0,
       "traditional pair [vi4,vi7]^4 lies in the product span at (16,0); this "
       "one completes the two independent degree-16 invariants"},
      {"shis3", "[vi5,vi2]^2", 16, 2, ""},
      {"shis4", "[vi8,vi2]^2", 16, 2, ""},
      {"shis5", "[des7,sh10]^1", 16, 2, "level omitted; 1 recovers order 2"},

      {"simn1", "[de3,vi5]^2", 17, 1, ""},
      {"simn2", "[si8,des7]^1", 17, 1, "level omitted; 1 recovers order 1"},

      {"vis1", "[de4,de3]^3", 18, 0, ""},
      {"vis2", "[de4,de10]^3", 18, 0, ""},
      {"vis3", "[de5,de6]^1", 18, 0, "level omitted; 1 recovers order 0"},
      {"vis4", "[de1,de10]^3", 18, 0, ""},
      {"vis5", "[de2,de3]^3", 18, 0, ""},
      {"vis6", "[de2,de10]^3", 18, 0, ""},
      {"vis7", "[de3,de10]^3", 18, 0, ""},
      {"vis8", "[de6,de7]^1", 18, 0, "level omitted; 1 recovers order 0"},
      {"vis9", "[de8,de9]^5", 18, 0, ""},

      {"devn", "[de7,des7]^1", 19, 1, "level omitted; 1 recovers order 1"},

      {"dvad", "[des7,des7]^2", 20, 0, ""},

      {"dvdv1", "[odn6,odn1]^3", 22, 0, ""},
      {"dvdv2", "[odn8,odn1]^3", 22, 0, ""},

      {"dvtr", "[tryn4,des7]^1", 23, 1, "level omitted; 1 recovers order 1"},

      {"dvsh", "[tryn4,tryn3]^1", 26, 0, "level omitted; 1 recovers order 0"},

      // Known only through an external construction; kept as an opaque entry
      // so the (degree, order) bookkeeping stays complete through degree 30.
      {"trd", "", 30, 0, "opaque entry, no polynomial payload"},
  };
  return table;
}

Registry replay_catalog(const FormContext& ctx, ReplayReport* report) {
  if (ctx.degree() != 7) throw Error("the generator catalog is for degree 7");
  Registry reg(7);
  ReplayReport local;
  ReplayReport& rep = report ? *report : local;
  for (const CatalogEntry& entry : generator_catalog_d7()) {
    GeneratorRecord rec;
    rec.name = entry.name;
    rec.degree = entry.degree;
    rec.order = entry.order;
    if (entry.expr[0] == '\0') {
      rec.construction = construct_opaque();
      reg.add(std::move(rec));
      ++rep.opaque;
      continue;
    }
    rec.construction = ConstructionExpr::parse(entry.expr);
    SemiInvariant value;
    try {
      value = reg.evaluate(ctx, *rec.construction);
    } catch (const Error& e) {
      rep.issues.push_back({entry.name, "error", e.what()});
      continue;
    }
    if (value.is_zero()) {
      rep.issues.push_back({entry.name, "zero", "construction evaluates to zero"});
      continue;
    }
    int recomputed = covariant_order(ctx, value.poly);
    if (recomputed != entry.order)
      rep.issues.push_back({entry.name, "order-mismatch",
                            "recorded " + std::to_string(entry.order) + ", recomputed " +
                                std::to_string(recomputed)});
    if (value.degree != entry.degree)
      rep.issues.push_back({entry.name, "degree-mismatch",
                            "recorded " + std::to_string(entry.degree) + ", recomputed " +
                                std::to_string(value.degree)});
    value.order = recomputed;
    rec.order = recomputed;
    rec.value = std::move(value);
    reg.add(std::move(rec));
    ++rep.built;
  }
  reg.set_complete_through(30);
  return reg;
}

}  // namespace covforge
