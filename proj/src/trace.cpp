#include "tdsim/trace.hpp"

namespace tdsim {

const char* to_string(TraceKind k) {
    switch (k) {
    case TraceKind::job_arrival: return "arrival";
    case TraceKind::staging_copy_start: return "staging_copy_start";
    case TraceKind::staging_copy_done: return "staging_copy_done";
    case TraceKind::enqueued: return "enqueued";
    case TraceKind::queue_drop: return "queue_drop";
    case TraceKind::shed: return "shed";
    case TraceKind::arrival_msg: return "arrival_msg";
    case TraceKind::dispatched: return "dispatched";
    case TraceKind::copy_start: return "copy_start";
    case TraceKind::copy_done: return "copy_done";
    case TraceKind::start_msg: return "start_msg";
    case TraceKind::exec_start: return "exec_start";
    case TraceKind::job_complete: return "complete";
    case TraceKind::complete_msg: return "complete_msg";
    case TraceKind::mode_change: return "mode_change";
    case TraceKind::bank_acquired: return "bank_acquired";
    case TraceKind::bank_released: return "bank_released";
    case TraceKind::anomaly: return "anomaly";
    case TraceKind::sim_end: return "sim_end";
    }
    return "unknown";
}

} // namespace tdsim
