// Walks one message through the smallest interesting configuration:
// RM(2,3) with two stuck cells and the three-position label {0, 3, 5}.

#include <iostream>

#include "rmstuck/rmstuck.hpp"

int main() {
  using namespace rmstuck;

  const Codec codec(2, 3, 2, std::vector<std::size_t>{0, 3, 5});
  const BitVector message = BitVector::from_bits({1, 1, 0, 1});
  const StuckPattern stuck{{2, true}, {5, true}};

  const EncodeTrace trace = codec.encode_trace(message, stuck);
  std::cout << "message       " << message.to_string() << '\n'
            << "info set      ";
  for (std::size_t p : codec.info_set()) std::cout << p << ' ';
  std::cout << "\nintermediate  " << trace.intermediate_message.to_string() << '\n'
            << "codeword b    " << trace.intermediate_codeword.to_string() << '\n'
            << "mask          " << trace.mask.to_string() << '\n'
            << "written c     " << trace.codeword.to_string() << "  (hex " << to_hex(trace.codeword) << ")\n";

  const BitVector back = codec.decode(trace.codeword);
  std::cout << "decoded       " << back.to_string() << '\n';
  return back == message ? 0 : 1;
}
