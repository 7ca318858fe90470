#pragma once

// Scoring on the unified slot sequence: every token contributes a case slot
// (U/L) followed by a punctuation slot (. , ? or blank).

#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chunkpunct/error.hpp"
#include "chunkpunct/labels.hpp"

namespace chunkpunct {

enum class Slot : std::uint8_t { Upper, Lower, FullStop, Comma, Question, Blank };

inline constexpr std::size_t kSlotCount = 6;
inline constexpr std::array<Slot, kSlotCount> kSlots{Slot::Upper,    Slot::Lower, Slot::FullStop,
                                                     Slot::Comma,    Slot::Question, Slot::Blank};
/// Class names as printed in reports.
inline constexpr std::array<std::string_view, kSlotCount> kSlotNames{"U", "L", ".", ",", "?", "$"};

inline constexpr std::array<Slot, 3> kPunctuationSlots{Slot::FullStop, Slot::Comma, Slot::Question};

constexpr std::size_t slot_index(Slot s) { return static_cast<std::size_t>(s); }
constexpr std::string_view slot_name(Slot s) { return kSlotNames[slot_index(s)]; }

constexpr Slot case_slot(CaseLabel c) { return c == CaseLabel::Upper ? Slot::Upper : Slot::Lower; }

constexpr Slot punct_slot(PunctLabel p) {
  switch (p) {
    case PunctLabel::FullStop: return Slot::FullStop;
    case PunctLabel::Comma: return Slot::Comma;
    case PunctLabel::Question: return Slot::Question;
    case PunctLabel::None: break;
  }
  return Slot::Blank;
}

inline std::vector<Slot> unify(const LabeledSequence& seq) {
  std::vector<Slot> out;
  out.reserve(seq.size() * 2);
  for (const auto& t : seq) {
    out.push_back(case_slot(t.case_label));
    out.push_back(punct_slot(t.punct));
  }
  return out;
}

/// counts[reference][hypothesis]
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kSlotCount>, kSlotCount> counts{};

  std::uint64_t& at(Slot ref, Slot hyp) { return counts[slot_index(ref)][slot_index(hyp)]; }
  std::uint64_t at(Slot ref, Slot hyp) const { return counts[slot_index(ref)][slot_index(hyp)]; }

  std::uint64_t row_sum(Slot ref) const {
    std::uint64_t s = 0;
    for (auto v : counts[slot_index(ref)]) s += v;
    return s;
  }
  std::uint64_t col_sum(Slot hyp) const {
    std::uint64_t s = 0;
    for (const auto& row : counts) s += row[slot_index(hyp)];
    return s;
  }
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (const auto& row : counts)
      for (auto v : row) s += v;
    return s;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    for (std::size_t r = 0; r < kSlotCount; ++r)
      for (std::size_t c = 0; c < kSlotCount; ++c) counts[r][c] += o.counts[r][c];
    return *this;
  }

  ConfusionMatrix transposed() const {
    ConfusionMatrix t;
    for (std::size_t r = 0; r < kSlotCount; ++r)
      for (std::size_t c = 0; c < kSlotCount; ++c) t.counts[c][r] = counts[r][c];
    return t;
  }

  /// Each row divided by its sum; empty rows stay zero.
  std::array<std::array<double, kSlotCount>, kSlotCount> row_normalized() const {
    std::array<std::array<double, kSlotCount>, kSlotCount> out{};
    for (std::size_t r = 0; r < kSlotCount; ++r) {
      const auto sum = row_sum(kSlots[r]);
      if (sum == 0) continue;
      for (std::size_t c = 0; c < kSlotCount; ++c) {
        out[r][c] = static_cast<double>(counts[r][c]) / static_cast<double>(sum);
      }
    }
    return out;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // reference occurrences
};

/// Precision/recall/F1 from raw counts; any zero denominator gives 0.
inline ClassMetrics metrics_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  ClassMetrics m;
  m.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.support = tp + fn;
  return m;
}

struct MetricsReport {
  std::array<ClassMetrics, kSlotCount> classes{};
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;

  const ClassMetrics& operator[](Slot s) const { return classes[slot_index(s)]; }
  ClassMetrics& operator[](Slot s) { return classes[slot_index(s)]; }

  /// Builds a report from known P/R/F1 values; supports are left at 0.
  static MetricsReport from_values(std::initializer_list<std::pair<Slot, std::array<double, 3>>> rows) {
    MetricsReport r;
    for (const auto& [slot, v] : rows) r[slot] = ClassMetrics{v[0], v[1], v[2], 0};
    r.summarize();
    return r;
  }

  void summarize() {
    macro_precision = macro_recall = macro_f1 = 0.0;
    for (const auto& c : classes) {
      macro_precision += c.precision;
      macro_recall += c.recall;
      macro_f1 += c.f1;
    }
    macro_precision /= kSlotCount;
    macro_recall /= kSlotCount;
    macro_f1 /= kSlotCount;
  }
};

/// One-vs-rest metrics for every class.
inline MetricsReport report_from(const ConfusionMatrix& cm) {
  MetricsReport r;
  for (Slot s : kSlots) {
    const auto tp = cm.at(s, s);
    r[s] = metrics_from_counts(tp, cm.col_sum(s) - tp, cm.row_sum(s) - tp);
  }
  r.summarize();
  return r;
}

/// Micro-averaged metrics over a subset of classes (pooled TP/FP/FN).
inline ClassMetrics micro_metrics(const ConfusionMatrix& cm, std::span<const Slot> subset) {
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (Slot s : subset) {
    const auto t = cm.at(s, s);
    tp += t;
    fp += cm.col_sum(s) - t;
    fn += cm.row_sum(s) - t;
  }
  return metrics_from_counts(tp, fp, fn);
}

inline ClassMetrics punctuation_micro(const ConfusionMatrix& cm) {
  return micro_metrics(cm, kPunctuationSlots);
}

/// Adds the slot comparisons of one aligned (ref, hyp) pair to `cm`.
inline void accumulate(ConfusionMatrix& cm, const LabeledSequence& ref, const LabeledSequence& hyp) {
  if (ref.size() != hyp.size()) throw LengthMismatch(ref.size(), hyp.size(), "score");
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i].word != hyp[i].word) {
      throw WordMismatch(i, "'" + ref[i].word + "' vs '" + hyp[i].word + "'");
    }
  }
  for (std::size_t i = 0; i < ref.size(); ++i) {
    cm.at(case_slot(ref[i].case_label), case_slot(hyp[i].case_label))++;
    cm.at(punct_slot(ref[i].punct), punct_slot(hyp[i].punct))++;
  }
}

struct ScoreResult {
  MetricsReport report;
  ConfusionMatrix confusion;
};

inline ScoreResult score(const LabeledSequence& ref, const LabeledSequence& hyp) {
  ConfusionMatrix cm;
  accumulate(cm, ref, hyp);
  return {report_from(cm), cm};
}

/// Per-class differences `a - b`.
struct DeltaRow {
  Slot slot;
  ClassMetrics a;
  ClassMetrics b;
  double d_precision;
  double d_recall;
  double d_f1;
};

struct DeltaTable {
  std::vector<DeltaRow> rows;

  const DeltaRow* find(Slot s) const {
    for (const auto& r : rows)
      if (r.slot == s) return &r;
    return nullptr;
  }
};

/// L and $ are hidden unless `all_classes`.
inline DeltaTable compare(const MetricsReport& a, const MetricsReport& b, bool all_classes = false) {
  DeltaTable t;
  for (Slot s : kSlots) {
    if (!all_classes && (s == Slot::Lower || s == Slot::Blank)) continue;
    const auto& x = a[s];
    const auto& y = b[s];
    t.rows.push_back({s, x, y, x.precision - y.precision, x.recall - y.recall, x.f1 - y.f1});
  }
  return t;
}

/// Two stacked blocks (Class / Precision / Recall / F1-score) plus a delta block.
inline std::string format_compare(const DeltaTable& t, std::string_view name_a, std::string_view name_b) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  auto block = [&](std::string_view name, auto pick) {
    os << name << '\n';
    os << "  Class  Precision  Recall  F1-score\n";
    for (const auto& r : t.rows) {
      const ClassMetrics& m = pick(r);
      os << "  " << std::left << std::setw(5) << slot_name(r.slot) << std::right << std::setw(11)
         << m.precision << std::setw(8) << m.recall << std::setw(10) << m.f1 << '\n';
    }
  };
  block(name_a, [](const DeltaRow& r) -> const ClassMetrics& { return r.a; });
  block(name_b, [](const DeltaRow& r) -> const ClassMetrics& { return r.b; });
  os << "Delta\n  Class  Precision  Recall  F1-score\n" << std::showpos;
  for (const auto& r : t.rows) {
    os << "  " << std::left << std::setw(5) << slot_name(r.slot) << std::right << std::setw(11)
       << r.d_precision << std::setw(8) << r.d_recall << std::setw(10) << r.d_f1 << '\n';
  }
  return os.str();
}

}  // namespace chunkpunct
