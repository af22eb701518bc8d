#pragma once

namespace fermat {
// Serial is the reference path; Parallel uses OpenMP with a fixed reduction order.
enum class Exec { Serial, Parallel };
}
