//! A child process speaking the wire protocol. Stdout is read on a helper
//! thread so every wait can be bounded by the per-move time limit.
//!
//! The limits here are a harness convenience, not a sandbox: the child runs
//! with the caller's privileges and network access.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::time::{Duration, Instant};

use ppx_core::TerminationStatus;

use crate::wire::{FromAgent, ToAgent};

/// Why a session stopped being usable.
#[derive(Debug, Clone, PartialEq)]
pub enum SessionFailure {
    /// The program could not be started or died before the handshake.
    Launch(String),
    Timeout,
    /// The program exited or closed its pipes mid-match.
    Exited,
}

impl SessionFailure {
    pub fn status(&self) -> TerminationStatus {
        match self {
            SessionFailure::Launch(_) => TerminationStatus::SyntaxError,
            SessionFailure::Timeout => TerminationStatus::Timeout,
            SessionFailure::Exited => TerminationStatus::RuntimeError,
        }
    }
}

#[derive(Debug)]
pub struct ExternalSession {
    child: Child,
    stdin: Option<ChildStdin>,
    lines: Receiver<String>,
    time_limit: Duration,
    /// Time spent waiting on the program so far.
    pub waited: Duration,
}

fn limit_cpu(cmd: &mut Command, seconds: Option<u64>) {
    #[cfg(unix)]
    if let Some(secs) = seconds {
        use std::os::unix::process::CommandExt;
        // SAFETY: setrlimit is async-signal-safe and touches no parent state.
        unsafe {
            cmd.pre_exec(move || {
                let lim = libc::rlimit { rlim_cur: secs as libc::rlim_t, rlim_max: secs as libc::rlim_t };
                if libc::setrlimit(libc::RLIMIT_CPU, &lim) != 0 {
                    return Err(std::io::Error::last_os_error());
                }
                Ok(())
            });
        }
    }
    #[cfg(not(unix))]
    let _ = (cmd, seconds);
}

impl ExternalSession {
    /// Starts `command`, sends `init` and waits for `ready`.
    pub fn launch(command: &[String], init: &ToAgent, time_limit: Duration, cpu_seconds: Option<u64>) -> Result<Self, SessionFailure> {
        let (program, args) = command.split_first().ok_or_else(|| SessionFailure::Launch("empty command".into()))?;
        let mut cmd = Command::new(program);
        cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::null());
        limit_cpu(&mut cmd, cpu_seconds);
        let mut child = cmd.spawn().map_err(|e| SessionFailure::Launch(format!("{program}: {e}")))?;
        let stdout = child.stdout.take().expect("stdout is piped");
        let (tx, rx) = mpsc::channel();
        std::thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let Ok(line) = line else { break };
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        let stdin = child.stdin.take();
        let mut session = ExternalSession { child, stdin, lines: rx, time_limit, waited: Duration::ZERO };
        let handshake = session.send(init).and_then(|_| session.recv());
        match handshake {
            Ok(line) if matches!(serde_json::from_str(line.trim()), Ok(FromAgent::Ready {})) => Ok(session),
            Ok(line) => Err(SessionFailure::Launch(format!("expected ready, got {line:?}"))),
            Err(SessionFailure::Exited) => Err(SessionFailure::Launch("exited before the handshake".into())),
            Err(e) => Err(e),
        }
    }

    pub fn send(&mut self, msg: &ToAgent) -> Result<(), SessionFailure> {
        let stdin = self.stdin.as_mut().ok_or(SessionFailure::Exited)?;
        stdin.write_all(msg.to_line().as_bytes()).and_then(|_| stdin.flush()).map_err(|_| SessionFailure::Exited)
    }

    /// Next line from the program within the time limit.
    pub fn recv(&mut self) -> Result<String, SessionFailure> {
        let start = Instant::now();
        let got = self.lines.recv_timeout(self.time_limit);
        self.waited += start.elapsed();
        match got {
            Ok(line) => Ok(line),
            Err(RecvTimeoutError::Timeout) => {
                self.kill();
                Err(SessionFailure::Timeout)
            }
            Err(RecvTimeoutError::Disconnected) => Err(SessionFailure::Exited),
        }
    }

    /// Sends `end` if the program is still listening, then stops it.
    pub fn shutdown(mut self, farewell: &ToAgent) {
        let _ = self.send(farewell);
        self.stdin = None;
        let deadline = Instant::now() + Duration::from_millis(200);
        while Instant::now() < deadline {
            if matches!(self.child.try_wait(), Ok(Some(_))) {
                return;
            }
            std::thread::sleep(Duration::from_millis(5));
        }
    }

    fn kill(&mut self) {
        self.stdin = None;
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

impl Drop for ExternalSession {
    fn drop(&mut self) {
        self.kill();
    }
}
