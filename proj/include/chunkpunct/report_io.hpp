#pragma once

// Report serialization. JSON goes through nlohmann/json.

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chunkpunct/eval.hpp"
#include "chunkpunct/pipeline.hpp"

namespace chunkpunct {

/// {classes: {name: {precision, recall, f1, support}}, confusion: [[int]], ...}
inline nlohmann::ordered_json report_json(const MetricsReport& report, const ConfusionMatrix& cm) {
  nlohmann::ordered_json j;
  j["labels"] = nlohmann::json::array();
  for (Slot s : kSlots) j["labels"].push_back(std::string(slot_name(s)));
  auto& classes = j["classes"];
  classes = nlohmann::ordered_json::object();
  for (Slot s : kSlots) {
    const auto& m = report[s];
    classes[std::string(slot_name(s))] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  j["confusion"] = cm.counts;
  j["confusion_row_normalized"] = cm.row_normalized();
  const auto punct = punctuation_micro(cm);
  j["macro"] = {{"precision", report.macro_precision}, {"recall", report.macro_recall},
                {"f1", report.macro_f1}};
  j["punctuation_micro"] = {{"precision", punct.precision}, {"recall", punct.recall}, {"f1", punct.f1}};
  return j;
}

inline std::string report_tsv(const MetricsReport& report) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  os << "class\tprecision\trecall\tf1\tsupport\n";
  for (Slot s : kSlots) {
    const auto& m = report[s];
    os << slot_name(s) << '\t' << m.precision << '\t' << m.recall << '\t' << m.f1 << '\t'
       << m.support << '\n';
  }
  return os.str();
}

/// Plot-ready long format: one row per (m, class).
inline std::string sweep_tsv(const SweepReport& sweep) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  os << "m\tclass\tprecision\trecall\tf1\n";
  for (const auto& e : sweep) {
    for (Slot s : kSlots) {
      const auto& m = e.report[s];
      os << e.min_words_cut << '\t' << slot_name(s) << '\t' << m.precision << '\t' << m.recall
         << '\t' << m.f1 << '\n';
    }
  }
  return os.str();
}

}  // namespace chunkpunct
