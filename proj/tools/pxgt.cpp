#include <iostream>

int main()
{
  std::cout << "pxgt: CLI not wired up yet\n";
  return 0;
}
