//! Duplex message channels: in-process queues and framed TCP streams.

use std::io::{BufReader, BufWriter};
use std::net::TcpStream;
use std::sync::mpsc::{channel, Receiver, Sender};

use super::message::{read_frame, write_frame, Message};
use super::ProtocolError;

/// A blocking, ordered, reliable duplex message stream.
pub trait Channel {
    fn send(&mut self, msg: &Message) -> Result<(), ProtocolError>;
    fn recv(&mut self) -> Result<Message, ProtocolError>;
}

/// In-process channel endpoint backed by a pair of queues.
pub struct MemoryChannel {
    tx: Sender<Message>,
    rx: Receiver<Message>,
}

/// Two connected in-process endpoints.
pub fn memory_pair() -> (MemoryChannel, MemoryChannel) {
    let (atx, brx) = channel();
    let (btx, arx) = channel();
    (MemoryChannel { tx: atx, rx: arx }, MemoryChannel { tx: btx, rx: brx })
}

impl Channel for MemoryChannel {
    fn send(&mut self, msg: &Message) -> Result<(), ProtocolError> {
        self.tx.send(msg.clone()).map_err(|_| ProtocolError::Channel("peer gone".into()))
    }

    fn recv(&mut self) -> Result<Message, ProtocolError> {
        self.rx.recv().map_err(|_| ProtocolError::Channel("peer gone".into()))
    }
}

/// Length-prefixed JSON frames over TCP.
pub struct TcpChannel {
    reader: BufReader<TcpStream>,
    writer: BufWriter<TcpStream>,
}

impl TcpChannel {
    pub fn new(stream: TcpStream) -> std::io::Result<Self> {
        stream.set_nodelay(true)?;
        let reader = BufReader::new(stream.try_clone()?);
        Ok(TcpChannel { reader, writer: BufWriter::new(stream) })
    }
}

impl Channel for TcpChannel {
    fn send(&mut self, msg: &Message) -> Result<(), ProtocolError> {
        write_frame(&mut self.writer, msg)
    }

    fn recv(&mut self) -> Result<Message, ProtocolError> {
        read_frame(&mut self.reader)
    }
}
